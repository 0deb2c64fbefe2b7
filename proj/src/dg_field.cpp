#include "fkk/dg_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "fkk/error.hpp"

namespace fkk {

DGField::DGField(Space space)
    : space_(std::move(space)), coeffs_(Eigen::VectorXd::Zero(space_.dofs())) {}

DGField::DGField(Space space, Eigen::VectorXd coeffs)
    : space_(std::move(space)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != static_cast<Eigen::Index>(space_.dofs())) {
    throw PreconditionError(ErrorCode::ShapeMismatch,
                            "coefficient count " + std::to_string(coeffs_.size()) +
                                " does not match space size " + std::to_string(space_.dofs()));
  }
}

double DGField::coeff(int i, int j, int a, int b) const {
  const auto cell = space_.mesh.cell_index(i, j);
  return coeffs_[space_.dof(cell, space_.basis.mode_index(a, b))];
}

double DGField::eval_reference(int i, int j, double xi, double eta) const {
  const auto& basis = space_.basis;
  const auto px = basis.eval_1d(xi);
  const auto pv = basis.eval_1d(eta);
  const auto base = space_.dof(space_.mesh.cell_index(i, j), 0);
  double s = 0.0;
  for (int a = 0; a < basis.modes_1d(); ++a) {
    for (int b = 0; b < basis.modes_1d(); ++b) {
      s += coeffs_[base + basis.mode_index(a, b)] * px[a] * pv[b];
    }
  }
  return s;
}

double DGField::eval(double x, double v) const {
  const auto& mesh = space_.mesh;
  const int i = mesh.locate(x);
  const int j = mesh.locate(v);
  const double xi = 2.0 * (x - mesh.node(i)) / mesh.h() - 1.0;
  const double eta = 2.0 * (v - mesh.node(j)) / mesh.h() - 1.0;
  return eval_reference(i, j, std::clamp(xi, -1.0, 1.0), std::clamp(eta, -1.0, 1.0));
}

double DGField::l2_norm() const { return std::sqrt(space_.jacobian()) * coeffs_.norm(); }

DGField project_function(const Space& space, const Function2D& u, int points) {
  const auto& mesh = space.mesh;
  const auto& basis = space.basis;
  const int m = basis.modes_1d();
  const QuadRule rule = gauss_rule(points > 0 ? points : basis.degree() + 2);
  const std::size_t q = rule.size();

  std::vector<double> table(q * m);
  for (std::size_t p = 0; p < q; ++p) {
    for (int a = 0; a < m; ++a) table[p * m + a] = legendre_eval(a, rule.nodes[p]);
  }

  DGField field(space);
  auto& c = field.coeffs();
  const double h = mesh.h();
  std::vector<double> values(q * q);
  for (int i = 0; i < mesh.n(); ++i) {
    for (int j = 0; j < mesh.n(); ++j) {
      for (std::size_t px = 0; px < q; ++px) {
        const double x = mesh.node(i) + 0.5 * h * (rule.nodes[px] + 1.0);
        for (std::size_t pv = 0; pv < q; ++pv) {
          const double v = mesh.node(j) + 0.5 * h * (rule.nodes[pv] + 1.0);
          values[px * q + pv] = rule.weights[px] * rule.weights[pv] * u(x, v);
        }
      }
      // Orthonormal modes on the reference square: the mass matrix is the
      // identity there, so the coefficient is the reference moment.
      const auto base = space.dof(mesh.cell_index(i, j), 0);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          double s = 0.0;
          for (std::size_t px = 0; px < q; ++px) {
            for (std::size_t pv = 0; pv < q; ++pv) {
              s += values[px * q + pv] * table[px * m + a] * table[pv * m + b];
            }
          }
          c[base + basis.mode_index(a, b)] = s;
        }
      }
    }
  }
  return field;
}

DGField interpolate_function(const Space& space, const Function2D& u) {
  const auto& mesh = space.mesh;
  const auto& basis = space.basis;
  const int k = basis.degree();
  const int m = basis.modes_1d();

  std::vector<double> ref(m);
  for (int p = 0; p < m; ++p) ref[p] = k == 0 ? 0.0 : -1.0 + 2.0 * p / k;
  Eigen::MatrixXd vandermonde(m, m);
  for (int p = 0; p < m; ++p) {
    for (int a = 0; a < m; ++a) vandermonde(p, a) = legendre_eval(a, ref[p]);
  }
  const Eigen::MatrixXd inverse = vandermonde.inverse();

  // Physical node coordinates as exact ratios, so mesh lines are hit exactly.
  const int sub = std::max(k, 1);
  auto coordinate = [&](int cell, int p) {
    if (k == 0) return (cell + 0.5) / mesh.n();
    return static_cast<double>(cell * sub + p) / static_cast<double>(mesh.n() * sub);
  };

  DGField field(space);
  Eigen::MatrixXd values(m, m);
  for (int i = 0; i < mesh.n(); ++i) {
    for (int j = 0; j < mesh.n(); ++j) {
      for (int p = 0; p < m; ++p) {
        for (int q = 0; q < m; ++q) values(p, q) = u(coordinate(i, p), coordinate(j, q));
      }
      const Eigen::MatrixXd modal = inverse * values * inverse.transpose();
      const auto base = space.dof(mesh.cell_index(i, j), 0);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) field.coeffs()[base + basis.mode_index(a, b)] = modal(a, b);
      }
    }
  }
  return field;
}

double l2_distance(const DGField& a, const DGField& b) {
  if (!(a.space() == b.space())) {
    throw PreconditionError(ErrorCode::IncompatibleMesh,
                            "fields live on different spaces (N=" +
                                std::to_string(a.space().mesh.n()) + ", k=" +
                                std::to_string(a.space().basis.degree()) + " vs N=" +
                                std::to_string(b.space().mesh.n()) + ", k=" +
                                std::to_string(b.space().basis.degree()) + ")");
  }
  return std::sqrt(a.space().jacobian()) * (a.coeffs() - b.coeffs()).norm();
}

double l2_distance(const DGField& a, const Function2D& u, int points) {
  const auto& space = a.space();
  const auto& mesh = space.mesh;
  const QuadRule rule = gauss_rule(points > 0 ? points : space.basis.degree() + 3);
  const double h = mesh.h();
  double sum = 0.0;
  for (int i = 0; i < mesh.n(); ++i) {
    for (int j = 0; j < mesh.n(); ++j) {
      for (std::size_t px = 0; px < rule.size(); ++px) {
        const double x = mesh.node(i) + 0.5 * h * (rule.nodes[px] + 1.0);
        for (std::size_t pv = 0; pv < rule.size(); ++pv) {
          const double v = mesh.node(j) + 0.5 * h * (rule.nodes[pv] + 1.0);
          const double diff = a.eval_reference(i, j, rule.nodes[px], rule.nodes[pv]) - u(x, v);
          sum += rule.weights[px] * rule.weights[pv] * diff * diff;
        }
      }
    }
  }
  return std::sqrt(space.jacobian() * sum);
}

void write_field_csv(std::ostream& out, const DGField& field) {
  const auto& space = field.space();
  const int m = space.basis.modes_1d();
  out << "i,j,mode_a,mode_b,coefficient\n";
  char buf[64];
  for (int i = 0; i < space.mesh.n(); ++i) {
    for (int j = 0; j < space.mesh.n(); ++j) {
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          std::snprintf(buf, sizeof buf, "%.17g", field.coeff(i, j, a, b));
          out << i << ',' << j << ',' << a << ',' << b << ',' << buf << '\n';
        }
      }
    }
  }
}

}  // namespace fkk
