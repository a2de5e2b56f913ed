#pragma once

#include <cstdint>
#include <vector>

#include "pqlab/errors.hpp"
#include "pqlab/rational.hpp"
#include "pqlab/rng.hpp"

namespace pqlab::lattice {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;  // row-major
using IntVec = std::vector<std::int64_t>;
using IntMat = std::vector<IntVec>;

/// Lattice basis given by column vectors; linear independence is enforced
/// (nonzero determinant).
struct Basis {
  std::size_t n = 0;
  std::vector<RatVec> cols;
};

Basis make_basis(std::vector<RatVec> cols);
Basis basis_from_int_columns(const IntMat& cols);

/// Integer matrix with determinant +-1.
struct Unimodular {
  std::size_t n = 0;
  IntMat rows;
};

/// Exact determinant / inverse over rationals; throws Singular.
Rational det(const RatMat& m);
RatMat inverse(const RatMat& m);
std::int64_t det_int(const IntMat& m);

/// (prod ||v_i||_2) / |det B|; >= 1 by Hadamard. The only float in this
/// module's results.
double defect(const Basis& b);
double defect_rows(const IntMat& rows);

/// Product of `steps` random elementary integer row operations (add a
/// multiple in [-3, 3], swap, negate) applied to the identity.
Unimodular random_unimodular(std::size_t n, RngStream& rng, int steps);

std::int64_t unimodular_det(const Unimodular& u);
Unimodular unimodular_inverse(const Unimodular& u);

/// Column-convention change of basis C = B * U, verified to span the same
/// lattice in both directions.
Basis transform_basis(const Basis& b, const Unimodular& u);

/// True iff both bases generate the same lattice (two-way integer solve).
bool same_lattice(const Basis& b, const Basis& c);

struct EnumerationResult {
  RatVec vector;
  IntVec coeffs;
  Rational norm2;
};

/// Shortest nonzero integer combination with coefficients in the box
/// [-M, M]^n; exactness is relative to the box. Ties resolve to the
/// lexicographically smallest coefficient vector.
EnumerationResult svp_bruteforce(const Basis& b, std::int64_t box);

/// Lattice vector in the same box closest to the target w.
EnumerationResult cvp_bruteforce(const Basis& b, const RatVec& w, std::int64_t box);

/// n linearly independent lattice vectors of successively minimal norms;
/// they form a basis for n <= 3 (throws Unsupported above that).
Basis sivp_bruteforce(const Basis& b);

/// round(B^-1 c) taken coordinate-wise (ties toward +infinity), mapped back
/// into the lattice.
RatVec babai_round(const Basis& b, const RatVec& c);

/// Keys of the lattice encryption scheme built on the closest-vector
/// problem. Row convention: bases are stacks of row vectors, the public
/// basis is U * B and messages multiply from the left.
struct GghKeys {
  IntMat private_rows;
  IntMat public_rows;
  Unimodular transform;
  double private_defect = 0.0;
  double public_defect = 0.0;
};

GghKeys ggh_keygen(const IntMat& good_rows, const Unimodular& u,
                   double max_good_defect = 1.2);
IntVec ggh_encrypt(const IntVec& message, const IntMat& public_rows, const IntVec& error);
IntVec ggh_decrypt(const IntVec& ciphertext, const GghKeys& keys);

/// Noisy linear system t = A s + e (mod q) with a planted secret; the error
/// entries are kept centered in [-error_bound, error_bound].
struct LweInstance {
  std::size_t n = 0;
  std::uint64_t q = 0;
  std::vector<std::vector<std::uint64_t>> A;  // row-major n x n
  std::vector<std::uint64_t> s;
  std::vector<std::int64_t> e;
  std::vector<std::uint64_t> t;
  std::int64_t error_bound = 0;

  bool holds() const;
};

LweInstance lwe_generate(std::size_t n, std::uint64_t q, std::int64_t error_bound,
                         RngStream& rng);

/// The n x (2n+1) block matrix (A | E_n | -t) together with the witness
/// check (A | E_n | -t) * (s, e, 1)^T == 0 (mod q).
struct LweEmbedding {
  std::vector<std::vector<std::uint64_t>> matrix;
  bool witness_ok = false;
};

LweEmbedding lwe_embed(const LweInstance& inst);

/// Solves A s == t (mod q) for prime q by Gaussian elimination; throws
/// Singular when A is not invertible mod q.
std::vector<std::uint64_t> gauss_solve(const std::vector<std::vector<std::uint64_t>>& A,
                                       const std::vector<std::uint64_t>& t,
                                       std::uint64_t q);

}  // namespace pqlab::lattice
