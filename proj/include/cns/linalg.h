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

#ifndef CNS_LINALG_H_
#define CNS_LINALG_H_

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "cns/random.h"

namespace cns {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// Eigenvalues below this are treated as numerical noise around zero.
inline constexpr double kEigenClip = 1e-10;

// Largest |m_ij|.
double MaxAbsEntry(const CMatrix& m);

// ||m - m^dagger||_max.
double HermitianDeviation(const CMatrix& m);

// Applies f to the spectrum of a Hermitian matrix: V f(Lambda) V^dagger.
CMatrix HermitianFunction(const CMatrix& h, const std::function<double(double)>& f);

// Eigenvalues of the Hermitian part of h, ascending.
RVector HermitianEigenvalues(const CMatrix& h);

// exp(i h) for Hermitian h.
CMatrix ExpIHermitian(const CMatrix& h);

// Largest singular value.
double SpectralNorm(const CMatrix& m);

// Haar-random unitary: QR of a complex Ginibre matrix with phase fix.
CMatrix RandomUnitaryMatrix(int dim, CounterRng& rng);

// Standard complex normal with E|z|^2 = 1.
Complex ComplexNormal(CounterRng& rng);

}  // namespace cns

#endif  // CNS_LINALG_H_
