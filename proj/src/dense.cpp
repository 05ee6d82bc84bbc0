#include "jbc/dense.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace jbc {

namespace {

Eigen::MatrixXd to_eigen(const Matrix<double>& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const Matrix<double>& a) {
  if (!a.square()) throw InvalidArgument("eigenvalues: matrix is not square");
  if (a.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(a), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw EigensolverFailure("self-adjoint eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double largest_singular_value(const Matrix<double>& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
  return svd.singularValues()(0);
}

}  // namespace jbc
