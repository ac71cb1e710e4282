#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "rotomo/rotor_model.hpp"

namespace rotomo {

DensityBlock::DensityBlock(int k, int m, int j_max)
    : DensityBlock(k, m, j_max, Eigen::MatrixXcd::Zero(std::max(0, j_max - lowest_j(k, m) + 1),
                                                       std::max(0, j_max - lowest_j(k, m) + 1))) {}

DensityBlock::DensityBlock(int k, int m, int j_max, Eigen::MatrixXcd elements)
    : k_(k), m_(m), j_min_(lowest_j(k, m)), j_max_(j_max), elements_(std::move(elements)) {
  if (j_max_ < j_min_) {
    throw std::domain_error("DensityBlock: j_max = " + std::to_string(j_max) + " below M_km = " + std::to_string(j_min_));
  }
  if (j_max_ > kMaxAngularMomentum) throw std::domain_error("DensityBlock: j_max above supported cap");
  if (elements_.rows() != dim() || elements_.cols() != dim()) {
    throw std::invalid_argument("DensityBlock: matrix shape does not match j range");
  }
  const double skew = (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff();
  if (!(skew <= 1e-12)) throw std::invalid_argument("DensityBlock: matrix is not Hermitian (max skew " + std::to_string(skew) + ")");
  elements_ = 0.5 * (elements_ + elements_.adjoint()).eval();
}

void DensityBlock::set(int J1, int J2, std::complex<double> value) {
  if (J1 < j_min_ || J1 > j_max_ || J2 < j_min_ || J2 > j_max_) throw std::out_of_range("DensityBlock::set: index outside block");
  if (J1 == J2) value = value.real();
  elements_(J1 - j_min_, J2 - j_min_) = value;
  elements_(J2 - j_min_, J1 - j_min_) = std::conj(value);
}

bool DensityBlock::is_psd(double tol) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(elements_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

DensityBlock DensityBlock::projected_psd() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(elements_);
  Eigen::VectorXd lambda = solver.eigenvalues().cwiseMax(0.0);
  const double target = trace().real();
  const double sum = lambda.sum();
  if (sum > 0.0) lambda *= target / sum;
  Eigen::MatrixXcd rho = solver.eigenvectors() * lambda.cast<std::complex<double>>().asDiagonal() *
                         solver.eigenvectors().adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityBlock(k_, m_, j_max_, rho);
}

DensityBlock DensityBlock::resized(int j_max) const {
  DensityBlock out(k_, m_, j_max);
  const int n = std::min(dim(), out.dim());
  out.elements_.topLeftCorner(n, n) = elements_.topLeftCorner(n, n);
  return out;
}

double DensityBlock::max_abs_difference(const DensityBlock& a, const DensityBlock& b) {
  if (a.k() != b.k() || a.m() != b.m()) throw std::invalid_argument("max_abs_difference: blocks differ in (k, m)");
  const int j_max = std::max(a.j_max(), b.j_max());
  const DensityBlock pa = a.resized(j_max);
  const DensityBlock pb = b.resized(j_max);
  return (pa.elements_ - pb.elements_).cwiseAbs().maxCoeff();
}

}  // namespace rotomo
