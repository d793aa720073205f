// Copyright 2026 The Cognitive Neurosecurity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cns/linalg.h"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace cns {

double MaxAbsEntry(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double HermitianDeviation(const CMatrix& m) {
  return MaxAbsEntry(m - m.adjoint());
}

CMatrix HermitianFunction(const CMatrix& h, const std::function<double(double)>& f) {
  CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
  RVector lam = es.eigenvalues();
  CVector mapped(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) mapped(i) = f(lam(i));
  const CMatrix& v = es.eigenvectors();
  return v * mapped.asDiagonal() * v.adjoint();
}

RVector HermitianEigenvalues(const CMatrix& h) {
  CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

CMatrix ExpIHermitian(const CMatrix& h) {
  CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
  const RVector& lam = es.eigenvalues();
  CVector phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) phases(i) = std::polar(1.0, lam(i));
  const CMatrix& v = es.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

double SpectralNorm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

Complex ComplexNormal(CounterRng& rng) {
  double re = rng.Normal();
  double im = rng.Normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

CMatrix RandomUnitaryMatrix(int dim, CounterRng& rng) {
  CMatrix z(dim, dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) z(r, c) = ComplexNormal(rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    Complex d = r(i, i);
    double a = std::abs(d);
    if (a > 0) q.col(i) *= d / a;
  }
  return q;
}

}  // namespace cns
