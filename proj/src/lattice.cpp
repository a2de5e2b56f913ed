#include "pqlab/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "pqlab/modnum.hpp"

namespace pqlab::lattice {

namespace {

RatMat columns_to_matrix(const Basis& b) {
  RatMat m(b.n, RatVec(b.n));
  for (std::size_t j = 0; j < b.n; ++j)
    for (std::size_t i = 0; i < b.n; ++i) m[i][j] = b.cols[j][i];
  return m;
}

RatMat int_rows_to_matrix(const IntMat& rows) {
  RatMat m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    m[i] = RatVec(rows[i].begin(), rows[i].end());
  return m;
}

Rational dot_rat(const RatVec& a, const RatVec& b) {
  Rational acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm_of(const RatVec& v) { return std::sqrt(dot_rat(v, v).to_double()); }

/// Solve M x = rhs exactly; throws Singular if M is singular.
RatVec solve_exact(RatMat m, RatVec rhs) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw Singular("singular matrix");
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    const Rational inv = Rational(1) / m[col][col];
    for (std::size_t j = col; j < n; ++j) m[col][j] *= inv;
    rhs[col] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      const Rational f = m[row][col];
      for (std::size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
      rhs[row] -= f * rhs[col];
    }
  }
  return rhs;
}

bool all_integer(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_integer(); });
}

/// Row vector times matrix (row convention).
IntVec row_times_mat(const IntVec& row, const IntMat& m) {
  IntVec out(m[0].size(), 0);
  for (std::size_t j = 0; j < out.size(); ++j) {
    __int128 acc = 0;
    for (std::size_t i = 0; i < row.size(); ++i)
      acc += static_cast<__int128>(row[i]) * m[i][j];
    out[j] = static_cast<std::int64_t>(acc);
  }
  return out;
}

}  // namespace

Basis make_basis(std::vector<RatVec> cols) {
  Basis b;
  b.n = cols.size();
  if (b.n == 0) throw DomainError("empty basis");
  for (const auto& c : cols)
    if (c.size() != b.n) throw DomainError("basis vectors must have dimension n");
  b.cols = std::move(cols);
  if (det(columns_to_matrix(b)).is_zero())
    throw DomainError("basis vectors must be linearly independent");
  return b;
}

Basis basis_from_int_columns(const IntMat& cols) {
  std::vector<RatVec> rc;
  rc.reserve(cols.size());
  for (const auto& c : cols) rc.emplace_back(c.begin(), c.end());
  return make_basis(std::move(rc));
}

Rational det(const RatMat& m) {
  const std::size_t n = m.size();
  RatMat a = m;
  Rational result(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      result = -result;
    }
    result *= a[col][col];
    const Rational inv = Rational(1) / a[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (a[row][col].is_zero()) continue;
      const Rational f = a[row][col] * inv;
      for (std::size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
    }
  }
  return result;
}

RatMat inverse(const RatMat& m) {
  const std::size_t n = m.size();
  RatMat inv(n, RatVec(n));
  for (std::size_t j = 0; j < n; ++j) {
    RatVec e(n, Rational(0));
    e[j] = Rational(1);
    RatVec col = solve_exact(m, e);
    for (std::size_t i = 0; i < n; ++i) inv[i][j] = col[i];
  }
  return inv;
}

std::int64_t det_int(const IntMat& m) {
  Rational d = det(int_rows_to_matrix(m));
  if (!d.is_integer()) throw DomainError("integer determinant expected");
  return static_cast<std::int64_t>(d.num());
}

double defect(const Basis& b) {
  Rational d = det(columns_to_matrix(b));
  if (d.is_zero()) throw DomainError("singular basis has no defect");
  double prod = 1.0;
  for (const auto& v : b.cols) prod *= norm_of(v);
  return prod / std::abs(d.to_double());
}

double defect_rows(const IntMat& rows) {
  Basis b;
  b.n = rows.size();
  for (std::size_t j = 0; j < rows.size(); ++j) {
    // Rows and columns give the same defect: transposition preserves both
    // the determinant and the vector norms.
    b.cols.emplace_back(rows[j].begin(), rows[j].end());
  }
  return defect(b);
}

Unimodular random_unimodular(std::size_t n, RngStream& rng, int steps) {
  if (n == 0) throw DomainError("dimension must be positive");
  Unimodular u;
  u.n = n;
  u.rows.assign(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) u.rows[i][i] = 1;
  for (int s = 0; s < steps; ++s) {
    const std::uint64_t kind = n == 1 ? 2 : rng.uniform_below(3);
    if (kind == 0) {
      // row_i += c * row_j
      std::size_t i = rng.uniform_below(n);
      std::size_t j = rng.uniform_below(n - 1);
      if (j >= i) ++j;
      std::int64_t c = rng.uniform_int(-3, 3);
      for (std::size_t k = 0; k < n; ++k) u.rows[i][k] += c * u.rows[j][k];
    } else if (kind == 1) {
      std::size_t i = rng.uniform_below(n);
      std::size_t j = rng.uniform_below(n - 1);
      if (j >= i) ++j;
      std::swap(u.rows[i], u.rows[j]);
    } else {
      std::size_t i = rng.uniform_below(n);
      for (auto& v : u.rows[i]) v = -v;
    }
  }
  return u;
}

std::int64_t unimodular_det(const Unimodular& u) { return det_int(u.rows); }

Unimodular unimodular_inverse(const Unimodular& u) {
  RatMat inv = inverse(int_rows_to_matrix(u.rows));
  Unimodular out;
  out.n = u.n;
  out.rows.assign(u.n, IntVec(u.n, 0));
  for (std::size_t i = 0; i < u.n; ++i) {
    for (std::size_t j = 0; j < u.n; ++j) {
      if (!inv[i][j].is_integer())
        throw DomainError("matrix is not unimodular: inverse not integral");
      out.rows[i][j] = static_cast<std::int64_t>(inv[i][j].num());
    }
  }
  return out;
}

Basis transform_basis(const Basis& b, const Unimodular& u) {
  if (b.n != u.n) throw DomainError("dimension mismatch");
  const std::int64_t d = unimodular_det(u);
  if (d != 1 && d != -1) throw DomainError("transform must be unimodular");
  std::vector<RatVec> cols(b.n, RatVec(b.n, Rational(0)));
  // C = B * U with column bases: c_j = sum_i u[i][j] * b_i.
  for (std::size_t j = 0; j < b.n; ++j)
    for (std::size_t i = 0; i < b.n; ++i)
      for (std::size_t row = 0; row < b.n; ++row)
        cols[j][row] += b.cols[i][row] * Rational(u.rows[i][j]);
  Basis out = make_basis(std::move(cols));
  if (!same_lattice(b, out)) throw DomainError("transform did not preserve the lattice");
  return out;
}

bool same_lattice(const Basis& b, const Basis& c) {
  if (b.n != c.n) return false;
  const RatMat mb = columns_to_matrix(b);
  const RatMat mc = columns_to_matrix(c);
  // Each vector of one basis must be an integer combination of the other.
  for (std::size_t j = 0; j < c.n; ++j) {
    if (!all_integer(solve_exact(mb, c.cols[j]))) return false;
  }
  for (std::size_t j = 0; j < b.n; ++j) {
    if (!all_integer(solve_exact(mc, b.cols[j]))) return false;
  }
  return true;
}

namespace {

template <typename Score>
EnumerationResult enumerate_box(const Basis& b, std::int64_t box, bool skip_zero,
                                Score&& score) {
  if (b.n > 4) throw Unsupported("brute-force enumeration supports n <= 4");
  if (box < 1) throw DomainError("coefficient box must be >= 1");
  IntVec g(b.n, -box);
  bool found = false;
  EnumerationResult best;
  for (;;) {
    const bool zero = std::all_of(g.begin(), g.end(), [](auto v) { return v == 0; });
    if (!(zero && skip_zero)) {
      RatVec x(b.n, Rational(0));
      for (std::size_t i = 0; i < b.n; ++i)
        for (std::size_t row = 0; row < b.n; ++row)
          x[row] += b.cols[i][row] * Rational(g[i]);
      const Rational n2 = score(x);
      if (!found || n2 < best.norm2 ||
          (n2 == best.norm2 && std::lexicographical_compare(g.begin(), g.end(),
                                                            best.coeffs.begin(),
                                                            best.coeffs.end()))) {
        best = EnumerationResult{x, g, n2};
        found = true;
      }
    }
    std::size_t i = 0;
    while (i < b.n && g[i] == box) {
      g[i] = -box;
      ++i;
    }
    if (i == b.n) break;
    ++g[i];
  }
  return best;
}

}  // namespace

EnumerationResult svp_bruteforce(const Basis& b, std::int64_t box) {
  return enumerate_box(b, box, true, [](const RatVec& x) { return dot_rat(x, x); });
}

EnumerationResult cvp_bruteforce(const Basis& b, const RatVec& w, std::int64_t box) {
  if (w.size() != b.n) throw DomainError("target dimension mismatch");
  return enumerate_box(b, box, false, [&w](const RatVec& x) {
    Rational acc;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const Rational d = x[i] - w[i];
      acc += d * d;
    }
    return acc;
  });
}

namespace {

/// Rank of a small integer matrix given as rows of coefficient vectors.
std::size_t coeff_rank(const std::vector<IntVec>& rows, std::size_t dim) {
  RatMat m(rows.size(), RatVec(dim, Rational(0)));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m[i][j] = Rational(rows[i][j]);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < dim && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    const Rational inv = Rational(1) / m[rank][col];
    for (std::size_t j = col; j < dim; ++j) m[rank][j] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col].is_zero()) continue;
      const Rational f = m[r][col];
      for (std::size_t j = col; j < dim; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Basis sivp_bruteforce(const Basis& b) {
  if (b.n > 3) throw Unsupported("successive minima enumeration supports n <= 3");
  const std::int64_t kMaxBox = b.n <= 2 ? 4096 : 64;
  const RatMat binv = inverse(columns_to_matrix(b));

  std::int64_t box = 1;
  for (;;) {
    if (box > kMaxBox) throw Unsupported("basis too skewed for certified enumeration");
    // Walk all nonzero coefficient vectors sorted by (norm, coefficients)
    // and greedily keep independent ones: the greedy picks realize the
    // successive minima, which form a basis in dimension <= 3.
    struct Candidate {
      Rational norm2;
      IntVec coeffs;
    };
    std::vector<Candidate> all;
    IntVec g(b.n, -box);
    for (;;) {
      if (!std::all_of(g.begin(), g.end(), [](auto v) { return v == 0; })) {
        Rational n2;
        for (std::size_t row = 0; row < b.n; ++row) {
          Rational x;
          for (std::size_t i = 0; i < b.n; ++i) x += b.cols[i][row] * Rational(g[i]);
          n2 += x * x;
        }
        all.push_back(Candidate{n2, g});
      }
      std::size_t i = 0;
      while (i < b.n && g[i] == box) {
        g[i] = -box;
        ++i;
      }
      if (i == b.n) break;
      ++g[i];
    }
    std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& c) {
      if (a.norm2 != c.norm2) return a.norm2 < c.norm2;
      return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(),
                                          c.coeffs.begin(), c.coeffs.end());
    });

    std::vector<IntVec> picked_coeffs;
    double worst = 0.0;
    for (const auto& cand : all) {
      if (picked_coeffs.size() == b.n) break;
      picked_coeffs.push_back(cand.coeffs);
      if (coeff_rank(picked_coeffs, b.n) == picked_coeffs.size()) {
        worst = std::max(worst, std::sqrt(cand.norm2.to_double()));
      } else {
        picked_coeffs.pop_back();
      }
    }

    if (picked_coeffs.size() == b.n) {
      // Certify the box: any vector at most as long as the worst pick has
      // coefficients bounded by ||row_i(B^-1)|| * ||v||.
      double bound = 0.0;
      for (std::size_t i = 0; i < b.n; ++i) {
        double rn = 0.0;
        for (std::size_t j = 0; j < b.n; ++j) {
          double e = binv[i][j].to_double();
          rn += e * e;
        }
        bound = std::max(bound, std::sqrt(rn) * worst);
      }
      const std::int64_t needed = static_cast<std::int64_t>(std::floor(bound)) + 1;
      if (box >= needed) {
        std::vector<RatVec> vecs;
        for (const auto& coeffs : picked_coeffs) {
          RatVec x(b.n, Rational(0));
          for (std::size_t i = 0; i < b.n; ++i)
            for (std::size_t row = 0; row < b.n; ++row)
              x[row] += b.cols[i][row] * Rational(coeffs[i]);
          vecs.push_back(std::move(x));
        }
        return make_basis(std::move(vecs));
      }
      box = std::min(needed, kMaxBox + 1);
    } else {
      box *= 2;
    }
  }
}

RatVec babai_round(const Basis& b, const RatVec& c) {
  if (c.size() != b.n) throw DomainError("target dimension mismatch");
  const RatMat binv = inverse(columns_to_matrix(b));
  RatVec coords(b.n, Rational(0));
  for (std::size_t i = 0; i < b.n; ++i)
    for (std::size_t j = 0; j < b.n; ++j) coords[i] += binv[i][j] * c[j];
  RatVec out(b.n, Rational(0));
  for (std::size_t i = 0; i < b.n; ++i) {
    const Rational rounded(static_cast<long long>(coords[i].round_half_up()));
    for (std::size_t row = 0; row < b.n; ++row)
      out[row] += b.cols[i][row] * rounded;
  }
  return out;
}

GghKeys ggh_keygen(const IntMat& good_rows, const Unimodular& u, double max_good_defect) {
  const std::size_t n = good_rows.size();
  if (n == 0 || u.n != n) throw KeyGenError("dimension mismatch");
  const double good = defect_rows(good_rows);
  if (good >= max_good_defect)
    throw KeyGenError("private basis defect too large for reliable decryption");
  const std::int64_t d = det_int(u.rows);
  if (d != 1 && d != -1) throw KeyGenError("transform must be unimodular");

  IntMat pub(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      __int128 acc = 0;
      for (std::size_t k = 0; k < n; ++k)
        acc += static_cast<__int128>(u.rows[i][k]) * good_rows[k][j];
      pub[i][j] = static_cast<std::int64_t>(acc);
    }
  const double bad = defect_rows(pub);
  if (bad <= good)
    throw KeyGenError("public basis is not worse than the private one; redraw U");
  return GghKeys{good_rows, pub, u, good, bad};
}

IntVec ggh_encrypt(const IntVec& message, const IntMat& public_rows, const IntVec& error) {
  if (message.size() != public_rows.size() || error.size() != public_rows[0].size())
    throw DomainError("dimension mismatch");
  IntVec c = row_times_mat(message, public_rows);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += error[i];
  return c;
}

IntVec ggh_decrypt(const IntVec& ciphertext, const GghKeys& keys) {
  const std::size_t n = keys.private_rows.size();
  if (ciphertext.size() != n) throw DomainError("dimension mismatch");
  const RatMat binv = inverse(int_rows_to_matrix(keys.private_rows));
  // Row convention: y = c * B^-1, rounding removes e * B^-1, leaving m * U.
  RatVec y(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      y[j] += Rational(static_cast<long long>(ciphertext[i])) * binv[i][j];
  IntVec mu(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    mu[j] = static_cast<std::int64_t>(y[j].round_half_up());
  const Unimodular uinv = unimodular_inverse(keys.transform);
  return row_times_mat(mu, uinv.rows);
}

bool LweInstance::holds() const {
  for (std::size_t i = 0; i < n; ++i) {
    __int128 acc = 0;
    for (std::size_t j = 0; j < n; ++j)
      acc += static_cast<__int128>(A[i][j]) * s[j];
    acc += e[i];
    __int128 want = acc % static_cast<__int128>(q);
    if (want < 0) want += q;
    if (static_cast<std::uint64_t>(want) != t[i]) return false;
    if (std::abs(e[i]) > error_bound) return false;
  }
  return true;
}

LweInstance lwe_generate(std::size_t n, std::uint64_t q, std::int64_t error_bound,
                         RngStream& rng) {
  if (n == 0) throw DomainError("dimension must be positive");
  if (!modnum::is_prime(q)) throw DomainError("q must be prime");
  if (error_bound < 0 || static_cast<std::uint64_t>(error_bound) >= q)
    throw DomainError("error bound out of range");
  LweInstance inst;
  inst.n = n;
  inst.q = q;
  inst.error_bound = error_bound;
  inst.A.assign(n, std::vector<std::uint64_t>(n, 0));
  for (auto& row : inst.A)
    for (auto& v : row) v = rng.uniform_below(q);
  inst.s.resize(n);
  for (auto& v : inst.s) v = rng.uniform_below(q);
  inst.e.resize(n);
  for (auto& v : inst.e) v = rng.uniform_int(-error_bound, error_bound);
  inst.t.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    __int128 acc = 0;
    for (std::size_t j = 0; j < n; ++j)
      acc += static_cast<__int128>(inst.A[i][j]) * inst.s[j];
    acc += inst.e[i];
    __int128 r = acc % static_cast<__int128>(q);
    if (r < 0) r += q;
    inst.t[i] = static_cast<std::uint64_t>(r);
  }
  return inst;
}

LweEmbedding lwe_embed(const LweInstance& inst) {
  const std::size_t n = inst.n;
  LweEmbedding emb;
  emb.matrix.assign(n, std::vector<std::uint64_t>(2 * n + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) emb.matrix[i][j] = inst.A[i][j];
    emb.matrix[i][n + i] = 1;
    emb.matrix[i][2 * n] = (inst.q - inst.t[i] % inst.q) % inst.q;
  }
  // Witness (s, e, 1): the congruence holds by construction.
  emb.witness_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    __int128 acc = 0;
    for (std::size_t j = 0; j < n; ++j)
      acc += static_cast<__int128>(emb.matrix[i][j]) * inst.s[j];
    __int128 ei = inst.e[i] % static_cast<__int128>(inst.q);
    if (ei < 0) ei += inst.q;
    acc += static_cast<__int128>(emb.matrix[i][n + i]) * ei;
    acc += emb.matrix[i][2 * n];
    if (acc % static_cast<__int128>(inst.q) != 0) emb.witness_ok = false;
  }
  return emb;
}

std::vector<std::uint64_t> gauss_solve(const std::vector<std::vector<std::uint64_t>>& A,
                                       const std::vector<std::uint64_t>& t,
                                       std::uint64_t q) {
  const std::size_t n = A.size();
  if (n == 0 || t.size() != n) throw DomainError("shape mismatch");
  if (!modnum::is_prime(q)) throw DomainError("q must be prime");
  std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (A[i].size() != n) throw DomainError("shape mismatch");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = A[i][j] % q;
    m[i][n] = t[i] % q;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) throw Singular("matrix not invertible mod q");
    std::swap(m[pivot], m[col]);
    const std::uint64_t inv =
        modnum::mod_inverse(static_cast<std::int64_t>(m[col][col]), q).value;
    for (std::size_t j = col; j <= n; ++j) m[col][j] = modnum::mul_mod(m[col][j], inv, q);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const std::uint64_t f = m[row][col];
      for (std::size_t j = col; j <= n; ++j) {
        const std::uint64_t sub = modnum::mul_mod(f, m[col][j], q);
        m[row][j] = (m[row][j] + q - sub) % q;
      }
    }
  }
  std::vector<std::uint64_t> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = m[i][n];
  return s;
}

}  // namespace pqlab::lattice
