#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "pqlab/polyring.hpp"
#include "pqlab/rng.hpp"

using namespace pqlab;
using namespace pqlab::poly;

namespace {

Poly random_poly(RngStream& rng, std::uint64_t q, int max_deg) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(rng.uniform_below(max_deg + 1)) + 1);
  for (auto& v : c) v = rng.uniform_int(0, static_cast<std::int64_t>(q) - 1);
  return make_poly(q, std::move(c));
}

}  // namespace

TEST_SUITE("polyring") {

TEST_CASE("poly_add golden and oracle") {
  // (x+1) + (x+1) over Z_2 collapses to 0
  CHECK(poly_add(make_poly(2, {1, 1}), make_poly(2, {1, 1})).is_zero());
  auto p = make_poly(7, {3, 0, 2});
  CHECK(poly_add(p, make_poly(7, {})) == p);

  auto rng = RngStream::from_seed(21);
  for (int i = 0; i < 200; ++i) {
    auto a = random_poly(rng, 17, 9);
    auto b = random_poly(rng, 17, 9);
    auto got = poly_add(a, b);
    auto want = oracle::poly_add_mod(a.coeffs, b.coeffs, 17);
    while (!want.empty() && want.back() == 0) want.pop_back();
    CHECK(got.coeffs == want);
  }
}

TEST_CASE("poly_mul golden and oracle") {
  // (x+1)(x+6) = x^2 + 7x + 6 = x^2 + 6 over Z_7
  CHECK(poly_mul(make_poly(7, {1, 1}), make_poly(7, {6, 1})) == make_poly(7, {6, 0, 1}));
  CHECK(poly_mul(make_poly(7, {1, 1}), make_poly(7, {})).is_zero());

  auto rng = RngStream::from_seed(22);
  for (int i = 0; i < 200; ++i) {
    auto a = random_poly(rng, 17, 7);
    auto b = random_poly(rng, 17, 7);
    auto got = poly_mul(a, b);
    auto want = oracle::poly_mul_mod(a.coeffs, b.coeffs, 17);
    while (!want.empty() && want.back() == 0) want.pop_back();
    CHECK(got.coeffs == want);
  }
}

TEST_CASE("long division reproduces the worked example over the integers") {
  // (4x^5 - x^4 + 2x^3 + x^2 - 1) / (x^2 + 1)
  auto p = make_poly(0, {-1, 0, 1, 2, -1, 4});
  auto f = make_poly(0, {1, 0, 1});
  auto [q, r] = poly_divmod(p, f);
  CHECK(q == make_poly(0, {2, -2, -1, 4}));  // 4x^3 - x^2 - 2x + 2
  CHECK(r == make_poly(0, {-3, 2}));         // 2x - 3
  // p = q*f + r
  CHECK(poly_add(poly_mul(q, f), r) == p);
}

TEST_CASE("division by x and reconstruction identity") {
  auto p = make_poly(13, {5, 1, 7, 2});
  auto [q, r] = poly_divmod(p, make_poly(13, {0, 1}));
  CHECK(r == make_poly(13, {5}));
  CHECK(q == make_poly(13, {1, 7, 2}));

  auto rng = RngStream::from_seed(23);
  for (int i = 0; i < 200; ++i) {
    auto a = random_poly(rng, 17, 11);
    auto f = random_poly(rng, 17, 5);
    if (f.is_zero()) continue;
    auto [quot, rem] = poly_divmod(a, f);
    CHECK(rem.degree() < f.degree());
    CHECK(poly_add(poly_mul(quot, f), rem) == a);
  }

  // division by zero or by a zero-divisor leading coefficient is refused
  CHECK_THROWS_AS(poly_divmod(make_poly(17, {1, 1}), make_poly(17, {})), DomainError);
  CHECK_THROWS_AS(poly_divmod(make_poly(6, {1, 1, 1}), make_poly(6, {1, 2})),
                  NotInvertible);
  CHECK_THROWS_AS(poly_divmod(make_poly(0, {1, 1, 1}), make_poly(0, {1, 2})),
                  DomainError);  // over the integers only unit leads divide
}

TEST_CASE("negacyclic reduction folds X^n to -1") {
  // x^4 == -1 == q-1 in Z_q[X]/(X^4+1)
  CHECK(reduce_negacyclic(make_poly(7, {0, 0, 0, 0, 1}), 4) ==
        make_ring_elem(4, 7, {6}));
  // 4x^6 == -4x^2 == 3x^2 (mod 7)
  CHECK(reduce_negacyclic(make_poly(7, {0, 0, 0, 0, 0, 0, 4}), 4) ==
        make_ring_elem(4, 7, {0, 0, 3, 0}));

  auto rng = RngStream::from_seed(24);
  for (int i = 0; i < 200; ++i) {
    auto p = random_poly(rng, 17, 20);
    auto direct = reduce_negacyclic(p, 8);
    // Division by X^8 + 1 must leave the same remainder.
    std::vector<std::int64_t> mod(9, 0);
    mod[0] = 1;
    mod[8] = 1;
    auto rem = poly_divmod(p, make_poly(17, mod)).remainder;
    rem.coeffs.resize(8, 0);
    CHECK(direct.c == rem.coeffs);
  }
}

TEST_CASE("ring laws hold on random triples") {
  auto rng = RngStream::from_seed(25);
  for (auto [n, q] : {std::pair<std::uint32_t, std::uint64_t>{4, 7},
                      std::pair<std::uint32_t, std::uint64_t>{8, 17}}) {
    auto rand_elem = [&] {
      RingElem e = ring_zero(n, q);
      for (auto& c : e.c) c = rng.uniform_int(0, static_cast<std::int64_t>(q) - 1);
      return e;
    };
    for (int i = 0; i < 60; ++i) {
      auto a = rand_elem(), b = rand_elem(), c = rand_elem();
      CHECK(ring_add(a, b) == ring_add(b, a));
      CHECK(ring_mul(a, b) == ring_mul(b, a));
      CHECK(ring_mul(ring_mul(a, b), c) == ring_mul(a, ring_mul(b, c)));
      CHECK(ring_mul(a, ring_add(b, c)) == ring_add(ring_mul(a, b), ring_mul(a, c)));
      CHECK(ring_mul(a, ring_one(n, q)) == a);  // 1*X^0 is the identity
      CHECK(ring_add(a, ring_neg(a)) == ring_zero(n, q));
    }
  }
}

TEST_CASE("ring_mul equals the independent negacyclic oracle") {
  auto rng = RngStream::from_seed(26);
  for (int i = 0; i < 200; ++i) {
    RingElem a = ring_zero(8, 17), b = ring_zero(8, 17);
    for (auto& c : a.c) c = rng.uniform_int(0, 16);
    for (auto& c : b.c) c = rng.uniform_int(0, 16);
    CHECK(ring_mul(a, b).c == oracle::ring_mul(a.c, b.c, 8, 17));
  }
}

TEST_CASE("the residue ring has q^n elements, counted explicitly") {
  // Enumerate Z_3[X]/(X^2+1): every pair of coefficients is reachable and
  // distinct, so the cardinality is q^n = 9 (not q*n).
  std::set<std::vector<std::int64_t>> elems;
  for (std::int64_t c0 = 0; c0 < 3; ++c0)
    for (std::int64_t c1 = 0; c1 < 3; ++c1)
      elems.insert(make_ring_elem(2, 3, {c0, c1}).c);
  CHECK(elems.size() == 9);
}

TEST_CASE("bit mapping follows the worked example") {
  CHECK(bits_to_poly("1001", 4, 7) == make_ring_elem(4, 7, {1, 0, 0, 1}));
  CHECK(bits_to_poly("", 4, 7) == ring_zero(4, 7));
  CHECK(poly_to_bits(bits_to_poly("1001", 4, 7)) == "1001");
  // Round trip over every 4-bit string.
  for (int v = 0; v < 16; ++v) {
    std::string bits;
    for (int b = 3; b >= 0; --b) bits.push_back((v >> b) & 1 ? '1' : '0');
    CHECK(poly_to_bits(bits_to_poly(bits, 4, 7)) == bits);
  }
  CHECK_THROWS_AS(bits_to_poly("10101", 4, 7), DomainError);
  CHECK_THROWS_AS(poly_to_bits(make_ring_elem(4, 7, {2})), DomainError);
}

TEST_CASE("scaling by half of q") {
  CHECK(half_q(7) == 4);
  CHECK(half_q(3329) == 1665);
  CHECK(half_q(8380417) == 4190209);
  CHECK(scale_half_q(bits_to_poly("1001", 4, 7)) == make_ring_elem(4, 7, {4, 0, 0, 4}));
  CHECK(scale_half_q(ring_zero(4, 7)) == ring_zero(4, 7));
  CHECK_THROWS_AS(scale_half_q(make_ring_elem(4, 7, {3})), DomainError);
}

TEST_CASE("rounding rho") {
  // 3x^3+6x^2+6x+3 -> x^3+1 at q=7
  CHECK(round_coeffs(make_ring_elem(4, 7, {3, 6, 6, 3})) ==
        make_ring_elem(4, 7, {1, 0, 0, 1}));
  CHECK(round_coeffs(ring_zero(4, 7)) == ring_zero(4, 7));
  // exactly half_q rounds to 1, and the equidistant coefficient takes the
  // tie rule
  CHECK(round_coeffs(make_ring_elem(4, 7, {4})) == make_ring_elem(4, 7, {1}));
  CHECK(round_coeffs(make_ring_elem(4, 7, {2})) == make_ring_elem(4, 7, {1}));
  CHECK(round_to_half(make_ring_elem(4, 7, {3, 6, 6, 3})) ==
        make_ring_elem(4, 7, {4, 0, 0, 4}));
}

TEST_CASE("centered representative") {
  CHECK(centered(0, 7) == 0);
  CHECK(centered(3, 7) == 3);
  CHECK(centered(4, 7) == -3);
  CHECK(centered(6, 7) == -1);
  CHECK(inf_norm_centered(make_ring_elem(4, 7, {4, 6, 6, 0})) == 3);
}

TEST_CASE("rendering") {
  CHECK(render(make_ring_elem(4, 7, {3, 6, 6, 3})) == "3x^3+6x^2+6x+3");
  CHECK(render(make_ring_elem(4, 7, {6, 2, 5, 5}), true) == "-2x^3-2x^2+2x-1");
  CHECK(render(ring_zero(4, 7)) == "0");
  CHECK(render(make_poly(0, {2, -2, -1, 4})) == "4x^3-x^2-2x+2");
}

TEST_CASE("coefficient packing round trip") {
  auto rng = RngStream::from_seed(27);
  for (int i = 0; i < 50; ++i) {
    RingVec v;
    for (int j = 0; j < 3; ++j) {
      RingElem e = ring_zero(16, 3329);
      for (auto& c : e.c) c = rng.uniform_int(0, 3328);
      v.e.push_back(e);
    }
    Bytes packed = pack_coeffs(v);
    CHECK(packed.size() == packed_size(3, 16, 3329));
    CHECK(unpack_vec(packed, 3, 16, 3329) == v);
  }
}

TEST_CASE("matrix products compose with matvec") {
  auto rng = RngStream::from_seed(29);
  auto rand_mat = [&rng](std::size_t r, std::size_t c) {
    RingMat m{r, c, {}};
    for (std::size_t i = 0; i < r * c; ++i) {
      RingElem e = ring_zero(4, 7);
      for (auto& v : e.c) v = rng.uniform_int(0, 6);
      m.e.push_back(e);
    }
    return m;
  };
  for (int i = 0; i < 50; ++i) {
    const auto a = rand_mat(2, 3);
    const auto b = rand_mat(3, 2);
    RingVec v;
    for (int j = 0; j < 2; ++j) {
      RingElem e = ring_zero(4, 7);
      for (auto& c : e.c) c = rng.uniform_int(0, 6);
      v.e.push_back(e);
    }
    // (A*B)*v == A*(B*v)
    CHECK(matvec(matmul(a, b), v) == matvec(a, matvec(b, v)));
    // transpose reverses the product
    CHECK(transpose(matmul(a, b)) == matmul(transpose(b), transpose(a)));
  }
  CHECK_THROWS_AS(matmul(rand_mat(2, 3), rand_mat(2, 3)), DomainError);
}

TEST_CASE("matrix and vector helpers") {
  // identity * v == v
  RingMat id{2, 2, {ring_one(4, 7), ring_zero(4, 7), ring_zero(4, 7), ring_one(4, 7)}};
  RingVec v{{make_ring_elem(4, 7, {1, 2, 3, 4}), make_ring_elem(4, 7, {5, 6, 0, 1})}};
  CHECK(matvec(id, v) == v);

  auto rng = RngStream::from_seed(28);
  auto rand_vec = [&] {
    RingVec w;
    for (int j = 0; j < 2; ++j) {
      RingElem e = ring_zero(4, 7);
      for (auto& c : e.c) c = rng.uniform_int(0, 6);
      w.e.push_back(e);
    }
    return w;
  };
  for (int i = 0; i < 100; ++i) {
    auto u = rand_vec(), w = rand_vec(), z = rand_vec();
    CHECK(dot(vec_add(u, w), z) == ring_add(dot(u, z), dot(w, z)));
  }
}

}  // TEST_SUITE
