#include "fkk/projections.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fkk/error.hpp"

namespace fkk {

namespace {

// Defining functionals of a 1D projection as weights over a fixed point set
// on [-1, 1]: Gauss nodes followed by the two endpoints.
struct Functionals {
  std::vector<double> points;
  Eigen::MatrixXd weights;  // (k+1) x points
  Eigen::MatrixXd system;   // functionals applied to the basis, (k+1) x (k+1)
};

Functionals functionals(ProjectionKind kind, int k) {
  if (k < 0) {
    throw PreconditionError(ErrorCode::InvalidDegree,
                            "projection degree must be >= 0, got " + std::to_string(k));
  }
  if (kind != ProjectionKind::Plain && k == 0) {
    throw PreconditionError(ErrorCode::InvalidProjection,
                            "one-sided projections need k >= 1 (moments of degree k-1)");
  }
  const QuadRule rule = gauss_rule(k + 6);
  Functionals f;
  f.points = rule.nodes;
  f.points.push_back(-1.0);
  f.points.push_back(1.0);
  const auto np = static_cast<Eigen::Index>(f.points.size());
  const auto nq = static_cast<Eigen::Index>(rule.size());
  f.weights = Eigen::MatrixXd::Zero(k + 1, np);
  const int moments = kind == ProjectionKind::Plain ? k + 1 : k;
  for (int a = 0; a < moments; ++a) {
    for (Eigen::Index p = 0; p < nq; ++p) {
      f.weights(a, p) = rule.weights[p] * legendre_eval(a, rule.nodes[p]);
    }
  }
  if (kind == ProjectionKind::Plus) f.weights(k, nq) = 1.0;
  if (kind == ProjectionKind::Minus) f.weights(k, nq + 1) = 1.0;

  Eigen::MatrixXd basis_at(np, k + 1);
  for (Eigen::Index p = 0; p < np; ++p) {
    for (int c = 0; c <= k; ++c) basis_at(p, c) = legendre_eval(c, f.points[p]);
  }
  f.system = f.weights * basis_at;
  return f;
}

double map_to(double lo, double hi, double xi) {
  if (xi == -1.0) return lo;
  if (xi == 1.0) return hi;
  return lo + 0.5 * (hi - lo) * (xi + 1.0);
}

double to_reference(double lo, double hi, double x) {
  return std::clamp(2.0 * (x - lo) / (hi - lo) - 1.0, -1.0, 1.0);
}

std::pair<ProjectionKind, ProjectionKind> kinds(TensorProjection which) {
  switch (which) {
    case TensorProjection::Pi: return {ProjectionKind::Minus, ProjectionKind::Plus};
    case TensorProjection::PiX: return {ProjectionKind::Plain, ProjectionKind::Plain};
    case TensorProjection::PiVMinus: return {ProjectionKind::Plain, ProjectionKind::Minus};
  }
  return {ProjectionKind::Plain, ProjectionKind::Plain};
}

}  // namespace

double Polynomial1D::operator()(double x) const {
  const double xi = to_reference(lo, hi, x);
  double s = 0.0;
  for (std::size_t a = 0; a < coeffs.size(); ++a) s += coeffs[a] * legendre_eval(static_cast<int>(a), xi);
  return s;
}

Polynomial1D project_1d(ProjectionKind kind, const std::function<double(double)>& u, double lo,
                        double hi, int k) {
  const Functionals f = functionals(kind, k);
  Eigen::VectorXd values(f.points.size());
  for (std::size_t p = 0; p < f.points.size(); ++p) values[p] = u(map_to(lo, hi, f.points[p]));
  const Eigen::VectorXd c = f.system.partialPivLu().solve(f.weights * values);
  return {lo, hi, std::vector<double>(c.data(), c.data() + c.size())};
}

double CellExpansion::operator()(double x, double v) const {
  const double xi = to_reference(x0, x1, x);
  const double eta = to_reference(v0, v1, v);
  double s = 0.0;
  for (Eigen::Index a = 0; a < coeffs.rows(); ++a) {
    const double px = legendre_eval(static_cast<int>(a), xi);
    for (Eigen::Index b = 0; b < coeffs.cols(); ++b) {
      s += coeffs(a, b) * px * legendre_eval(static_cast<int>(b), eta);
    }
  }
  return s;
}

CellExpansion project_cell(TensorProjection which, const Function2D& u, double x0, double x1,
                           double v0, double v1, int k) {
  const auto [kx, kv] = kinds(which);
  const Functionals fx = functionals(kx, k);
  const Functionals fv = functionals(kv, k);
  Eigen::MatrixXd values(fx.points.size(), fv.points.size());
  for (std::size_t p = 0; p < fx.points.size(); ++p) {
    const double x = map_to(x0, x1, fx.points[p]);
    for (std::size_t q = 0; q < fv.points.size(); ++q) values(p, q) = u(x, map_to(v0, v1, fv.points[q]));
  }
  // Tensor conditions (lx_a (x) lv_b) u = (lx_a (x) lv_b) Pu, i.e.
  // Tx C Tv^T = Wx U Wv^T.
  const Eigen::MatrixXd rhs = fx.weights * values * fv.weights.transpose();
  const Eigen::MatrixXd left = fx.system.partialPivLu().solve(rhs);
  const Eigen::MatrixXd coeffs =
      fv.system.partialPivLu().solve(left.transpose()).transpose();
  return {x0, x1, v0, v1, coeffs};
}

DGField project_tensor(TensorProjection which, const Function2D& u, const Space& space) {
  const auto& mesh = space.mesh;
  const int k = space.basis.degree();
  DGField field(space);
  for (int i = 0; i < mesh.n(); ++i) {
    for (int j = 0; j < mesh.n(); ++j) {
      const CellExpansion cell =
          project_cell(which, u, mesh.node(i), mesh.node(i + 1), mesh.node(j), mesh.node(j + 1), k);
      const auto base = space.dof(mesh.cell_index(i, j), 0);
      for (int a = 0; a <= k; ++a) {
        for (int b = 0; b <= k; ++b) field.coeffs()[base + space.basis.mode_index(a, b)] = cell.coeffs(a, b);
      }
    }
  }
  return field;
}

Polynomial2D::Polynomial2D(int degree) : degree_(degree) {
  if (degree < 0) {
    throw PreconditionError(ErrorCode::DegreeViolation,
                            "polynomial degree must be >= 0, got " + std::to_string(degree));
  }
  c_.assign(static_cast<std::size_t>(degree + 1) * (degree + 1), 0.0);
}

double& Polynomial2D::coeff(int p, int q) {
  if (p < 0 || q < 0 || p + q > degree_) {
    throw PreconditionError(ErrorCode::DegreeViolation,
                            "monomial x^" + std::to_string(p) + " v^" + std::to_string(q) +
                                " exceeds degree " + std::to_string(degree_));
  }
  return c_[p * (degree_ + 1) + q];
}

double Polynomial2D::coeff(int p, int q) const {
  if (p < 0 || q < 0 || p + q > degree_) return 0.0;
  return c_[p * (degree_ + 1) + q];
}

int Polynomial2D::effective_degree() const noexcept {
  int d = -1;
  for (int p = 0; p <= degree_; ++p) {
    for (int q = 0; p + q <= degree_; ++q) {
      if (c_[p * (degree_ + 1) + q] != 0.0) d = std::max(d, p + q);
    }
  }
  return d;
}

double Polynomial2D::operator()(double x, double v) const {
  double s = 0.0;
  for (int p = 0; p <= degree_; ++p) {
    for (int q = 0; p + q <= degree_; ++q) s += coeff(p, q) * std::pow(x, p) * std::pow(v, q);
  }
  return s;
}

double Polynomial2D::dx(double x, double v) const {
  double s = 0.0;
  for (int p = 1; p <= degree_; ++p) {
    for (int q = 0; p + q <= degree_; ++q) s += p * coeff(p, q) * std::pow(x, p - 1) * std::pow(v, q);
  }
  return s;
}

double Polynomial2D::dv(double x, double v) const {
  double s = 0.0;
  for (int p = 0; p <= degree_; ++p) {
    for (int q = 1; p + q <= degree_; ++q) s += q * coeff(p, q) * std::pow(x, p) * std::pow(v, q - 1);
  }
  return s;
}

std::pair<double, double> projection_identity_residuals(const Polynomial2D& u, const Polynomial2D& nu_x,
                                                   const Polynomial2D& nu_v, const Mesh2D& mesh,
                                                   int i, int j, int k) {
  if (u.effective_degree() > k + 1) {
    throw PreconditionError(ErrorCode::DegreeViolation,
                            "u has degree " + std::to_string(u.effective_degree()) +
                                ", at most k+1 = " + std::to_string(k + 1) + " allowed");
  }
  if (nu_x.effective_degree() > k || nu_v.effective_degree() > k) {
    throw PreconditionError(ErrorCode::DegreeViolation,
                            "test functions must have degree <= k = " + std::to_string(k));
  }
  if (i < 0 || j < 0 || i >= mesh.n() || j >= mesh.n()) {
    throw PreconditionError(ErrorCode::InvalidResolution, "cell index outside the mesh");
  }
  const double h = mesh.h();
  const double x0 = mesh.node(i);
  const double x1 = mesh.node(i + 1);
  const double v0 = mesh.node(j);
  const double v1 = mesh.node(j + 1);
  const Function2D uf = [&](double x, double v) { return u(x, v); };

  const CellExpansion own = project_cell(TensorProjection::Pi, uf, x0, x1, v0, v1, k);
  // Neighbors across the faces that take their trace from outside the cell;
  // u is a global polynomial, so the neighbor cell may lie outside the domain.
  const CellExpansion left = project_cell(TensorProjection::Pi, uf, x0 - h, x0, v0, v1, k);
  const CellExpansion above = project_cell(TensorProjection::Pi, uf, x0, x1, v1, v1 + h, k);

  const QuadRule rule = gauss_rule(k + 4);
  auto at = [](double lo, double hi, double xi) { return lo + 0.5 * (hi - lo) * (xi + 1.0); };
  const double half = 0.5 * h;

  double volume_x = 0.0;
  double volume_v = 0.0;
  for (std::size_t p = 0; p < rule.size(); ++p) {
    const double x = at(x0, x1, rule.nodes[p]);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double v = at(v0, v1, rule.nodes[q]);
      const double w = rule.weights[p] * rule.weights[q] * half * half;
      const double diff = u(x, v) - own(x, v);
      volume_x += w * diff * nu_x.dx(x, v);
      volume_v += w * diff * nu_v.dv(x, v);
    }
  }

  double face_x = 0.0;
  double face_v = 0.0;
  for (std::size_t p = 0; p < rule.size(); ++p) {
    const double w = rule.weights[p] * half;
    // x faces: hat from the left.
    const double v = at(v0, v1, rule.nodes[p]);
    face_x += w * ((u(x1, v) - own(x1, v)) * nu_x(x1, v) - (u(x0, v) - left(x0, v)) * nu_x(x0, v));
    // v faces: hat from above.
    const double x = at(x0, x1, rule.nodes[p]);
    face_v += w * ((u(x, v1) - above(x, v1)) * nu_v(x, v1) - (u(x, v0) - own(x, v0)) * nu_v(x, v0));
  }
  return {volume_x - face_x, volume_v - face_v};
}

}  // namespace fkk
