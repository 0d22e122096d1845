#pragma once

#include "ilab/types.hpp"

#include <vector>

namespace ilab {

class Rng;

// Z -> A Z A^T.
Mat3 act(const Mat3& A, const Mat3& Z);

bool is_rotation(const Mat3& A, double tol = 1e-12);
bool is_psd(const Mat3& Z, double tol = 1e-12);

// Gram matrix of three vectors (the columns of zeta).
Mat3 gram_of(const Eigen::MatrixXd& zeta);
Mat3 random_gram(Rng& rng, int dim = 5);

struct SymEigen {
  Vec3 values;  // descending
  Mat3 O;       // rows are eigenvectors, det O = +1, O Z O^T = diag(values)
};

// Closed-form roots of the characteristic polynomial, eigenvectors from cross
// products, then cyclic Jacobi sweeps to polish.
SymEigen symmetric_eigen(const Mat3& Z);

// Signed transpositions from the normalization argument; P(i, j) swaps the
// i-th and j-th diagonal entries of a diagonal matrix under D -> P D P^T.
Mat3 signed_transposition(int i, int j);

struct Normalization {
  Mat3 A;
  Mat3 Zp;       // A Z A^T
  Vec3 lambda;   // descending eigenvalues of Z
  bool degenerate = false;
};

Normalization normalize(const Mat3& Z, double tie_tol = 1e-10);

// [[l1 + l3 - l2, L cos phi, L sin phi], [L cos phi, l2, 0], [L sin phi, 0, l2]],
// L = sqrt((l1 - l2)(l2 - l3)).
Mat3 normalized_family(const Mat3& Z, double phi);

// Angle phi placing a normalized Z' on the family above, with the residual.
std::pair<double, double> family_angle(const Mat3& Zp, const Mat3& Z);

// Zero the first k rows and columns (zeta' for k = 1, zeta'' for k = 2).
Mat3 truncate_gram(const Mat3& Z, int k);

}  // namespace ilab
