#include "qskyrm/tomography.hpp"

#include <cmath>
#include <stdexcept>

namespace qskyrm {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

// theta(15) = [a1..a3, c1..c3, b11, b12, ..., b33] (b row-major).
Eigen::Matrix<double, 1, 15> design_row(const MeasurementSetting& setting) {
  const Eigen::Vector3d n = spatial_axis(setting.a);
  const Eigen::Vector3d m = pol_axis(setting.b);
  Eigen::Matrix<double, 1, 15> row;
  for (int i = 0; i < 3; ++i) row(i) = 0.25 * n(i);
  for (int j = 0; j < 3; ++j) row(3 + j) = 0.25 * m(j);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      row(6 + 3 * i + j) = 0.25 * n(i) * m(j);
    }
  }
  return row;
}

}  // namespace

Eigen::Matrix2cd pauli(int j) {
  Eigen::Matrix2cd s;
  switch (j) {
    case 1:
      s << 1.0, 0.0, 0.0, -1.0;
      return s;
    case 2:
      s << 0.0, 1.0, 1.0, 0.0;
      return s;
    case 3:
      s << 0.0, -kI, kI, 0.0;
      return s;
    default:
      throw std::invalid_argument("pauli index must be 1..3");
  }
}

PauliCoefficients pauli_coefficients(const Eigen::Matrix4cd& rho) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  PauliCoefficients coeff;
  for (int i = 0; i < 3; ++i) {
    coeff.a(i) = (rho * kron2(pauli(i + 1), id)).trace().real();
    coeff.c(i) = (rho * kron2(id, pauli(i + 1))).trace().real();
    for (int j = 0; j < 3; ++j) {
      coeff.b(i, j) = (rho * kron2(pauli(i + 1), pauli(j + 1))).trace().real();
    }
  }
  return coeff;
}

Eigen::Matrix4cd from_pauli(const PauliCoefficients& coeff) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Identity();
  for (int i = 0; i < 3; ++i) {
    rho += coeff.a(i) * kron2(pauli(i + 1), id);
    rho += coeff.c(i) * kron2(id, pauli(i + 1));
    for (int j = 0; j < 3; ++j) {
      rho += coeff.b(i, j) * kron2(pauli(i + 1), pauli(j + 1));
    }
  }
  return 0.25 * rho;
}

Eigen::Vector3d spatial_axis(SpatialSetting s) {
  switch (s) {
    case SpatialSetting::L1:
      return {1.0, 0.0, 0.0};
    case SpatialSetting::L2:
      return {-1.0, 0.0, 0.0};
    case SpatialSetting::SupP:
      return {0.0, 1.0, 0.0};
    case SpatialSetting::SupM:
      return {0.0, -1.0, 0.0};
    case SpatialSetting::SupPI:
      return {0.0, 0.0, 1.0};
    default:
      return {0.0, 0.0, -1.0};
  }
}

Eigen::Vector3d pol_axis(PolSetting s) {
  switch (s) {
    case PolSetting::H:
      return {1.0, 0.0, 0.0};
    case PolSetting::V:
      return {-1.0, 0.0, 0.0};
    case PolSetting::D:
      return {0.0, 1.0, 0.0};
    case PolSetting::A:
      return {0.0, -1.0, 0.0};
    case PolSetting::R:
      return {0.0, 0.0, 1.0};
    default:
      return {0.0, 0.0, -1.0};
  }
}

Eigen::Matrix4cd project_physical(const Eigen::Matrix4cd& hermitian) {
  if (!hermitian.allFinite()) {
    throw std::invalid_argument("projection input has non-finite entries");
  }
  const double herm = (hermitian - hermitian.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-8) {
    throw std::invalid_argument("projection input not Hermitian");
  }
  if (hermitian.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("projection input is the zero matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(
      0.5 * (hermitian + hermitian.adjoint()));
  Eigen::Vector4d clipped = solver.eigenvalues().cwiseMax(0.0);
  const double weight = clipped.sum();
  if (weight <= 0.0) {
    throw std::invalid_argument(
        "projection input has no positive spectral weight");
  }
  clipped /= weight;
  return solver.eigenvectors() * clipped.asDiagonal() *
         solver.eigenvectors().adjoint();
}

TomographyResult reconstruct(const std::vector<MeasurementRecord>& records,
                             const ReconstructOptions& options) {
  const std::array<double, 36> probabilities = probabilities_from(records);
  const std::array<MeasurementSetting, 36> settings = tomography_settings();

  Eigen::Matrix<double, 36, 15> design;
  Eigen::Matrix<double, 36, 1> target;
  for (int k = 0; k < 36; ++k) {
    design.row(k) = design_row(settings[k]);
    target(k) = probabilities[k] - 0.25;
  }
  const Eigen::Matrix<double, 15, 15> normal =
      design.transpose() * design +
      options.ridge * Eigen::Matrix<double, 15, 15>::Identity();
  const Eigen::Matrix<double, 15, 1> theta =
      normal.ldlt().solve(design.transpose() * target);

  PauliCoefficients coeff;
  coeff.a = theta.segment<3>(0);
  coeff.c = theta.segment<3>(3);
  for (int i = 0; i < 3; ++i) {
    coeff.b.row(i) = theta.segment<3>(6 + 3 * i).transpose();
  }

  TomographyResult result;
  result.rho = from_pauli(coeff);
  if (options.project) {
    result.rho = project_physical(result.rho);
  }
  const Eigen::Matrix<double, 15, 1> theta_final = [&] {
    const PauliCoefficients final_coeff = pauli_coefficients(result.rho);
    Eigen::Matrix<double, 15, 1> t;
    t.segment<3>(0) = final_coeff.a;
    t.segment<3>(3) = final_coeff.c;
    for (int i = 0; i < 3; ++i) {
      t.segment<3>(6 + 3 * i) = final_coeff.b.row(i).transpose();
    }
    return t;
  }();
  result.residual = (design * theta_final - target).squaredNorm();
  result.iterations = 0;
  return result;
}

}  // namespace qskyrm
