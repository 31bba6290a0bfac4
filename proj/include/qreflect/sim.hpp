#pragma once

#include <Eigen/Dense>

#include "qreflect/circuit.hpp"

namespace qreflect {

using DenseOperator = Eigen::MatrixXcd;

/// || A^dagger A - 1 || in the spectral norm.
double unitarity_residual(const DenseOperator& a);

/// Throws InvalidInput unless u is square and max |U^dagger U - 1| <= 1e-10.
void require_unitary(const DenseOperator& u);

/// Dense matrix of the circuit on ancilla (x) system, ancilla as the leading
/// tensor factor: index = ancilla * dim + system. Throws InvalidInput unless
/// u is square and unitary within 1e-10.
DenseOperator realize(const CircuitIR& c, const DenseOperator& u);

enum class Block { kTopLeft, kBottomLeft };

/// <a| w |0> on the system register, a = 0 for kTopLeft and 1 for kBottomLeft.
DenseOperator pue_block(const DenseOperator& w, Block which);

/// Largest singular value: full SVD up to dimension 256, power iteration on
/// A^dagger A above.
double spectral_norm(const DenseOperator& a);

double spectral_norm_power(const DenseOperator& a, double tol = 1e-12,
                           int max_iterations = 10000);

}  // namespace qreflect
