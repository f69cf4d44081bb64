#include <gtest/gtest.h>

#include "support.hpp"

using namespace fermatfree;
using fixtures::random_elem;
using fixtures::random_nonzero;

namespace {

// Independent GF(2^k) multiply: carryless product, then reduction by the
// modulus bit pattern.
std::uint64_t clmul_reduce(std::uint64_t a, std::uint64_t b, const std::vector<std::uint64_t>& mod) {
  const unsigned k = static_cast<unsigned>(mod.size() - 1);
  unsigned __int128 prod = 0;
  for (unsigned i = 0; i < 64; ++i)
    if ((b >> i) & 1) prod ^= static_cast<unsigned __int128>(a) << i;
  unsigned __int128 m = 0;
  for (unsigned i = 0; i <= k; ++i)
    if (mod[i]) m |= static_cast<unsigned __int128>(1) << i;
  for (int bit = 127; bit >= static_cast<int>(k); --bit)
    if ((prod >> bit) & 1) prod ^= m << (bit - static_cast<int>(k));
  return static_cast<std::uint64_t>(prod);
}

// Independent GF(p^k) multiply via schoolbook polynomial product over Z/p.
std::uint64_t schoolbook(const Field& F, Code a, Code b) {
  const auto p = F.characteristic();
  const unsigned k = F.degree();
  const auto da = F.digits(a), db = F.digits(b);
  std::vector<std::uint64_t> prod(2 * k, 0);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  const auto& mod = F.modulus();
  for (unsigned deg = 2 * k - 1; deg >= k; --deg) {
    const auto c = prod[deg];
    if (c == 0) continue;
    for (unsigned i = 0; i <= k; ++i) prod[deg - k + i] = (prod[deg - k + i] + (p - c) * mod[i]) % p;
  }
  prod.resize(k);
  return F.from_digits(prod);
}

}  // namespace

TEST(Field, DefaultModuli) {
  EXPECT_EQ(Field::make(2, 2).modulus(), (std::vector<std::uint64_t>{1, 1, 1}));
  EXPECT_EQ(Field::make(3, 2).modulus(), (std::vector<std::uint64_t>{1, 0, 1}));
  EXPECT_EQ(Field::make(2, 4).modulus(), (std::vector<std::uint64_t>{1, 1, 0, 0, 1}));
  EXPECT_EQ(Field::make(5, 2).modulus(), (std::vector<std::uint64_t>{2, 0, 1}));
  EXPECT_EQ(Field::make(7, 1).modulus(), (std::vector<std::uint64_t>{0, 1}));
  EXPECT_EQ(Field::make(2, 2).descriptor(), "GF(2^2; 1,1,1)");
}

TEST(Field, RejectsBadInput) {
  try {
    Field::make(4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPrime);
  }
  try {
    Field::make(2, 2, std::vector<std::uint64_t>{1, 0, 1});  // (x+1)^2
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ReducibleModulus);
  }
  EXPECT_THROW(Field::make(2, 65), Error);
  EXPECT_THROW(Field::make(3, 2).inv(0), Error);
}

TEST(Field, BinaryMultiplyMatchesCarryless) {
  for (unsigned k : {1u, 2u, 3u, 4u, 8u, 13u, 32u, 63u}) {
    const Field F = Field::make(2, k);
    for (int t = 0; t < 2000; ++t) {
      const Code a = random_elem(F), b = random_elem(F);
      ASSERT_EQ(F.mul(a, b), clmul_reduce(a, b, F.modulus())) << "k=" << k;
    }
  }
}

TEST(Field, OddMultiplyMatchesSchoolbook) {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 2}, {5, 2}, {3, 5}, {7, 3}, {101, 2}}) {
    const Field F = Field::make(p, k);
    for (int t = 0; t < 2000; ++t) {
      const Code a = random_elem(F), b = random_elem(F);
      ASSERT_EQ(F.mul(a, b), schoolbook(F, a, b));
    }
  }
}

TEST(Field, Axioms) {
  for (const Field& F : fixtures::small_fields()) {
    for (int t = 0; t < 500; ++t) {
      const Code a = random_elem(F), b = random_elem(F), c = random_elem(F);
      EXPECT_EQ(F.add(a, b), F.add(b, a));
      EXPECT_EQ(F.mul(a, b), F.mul(b, a));
      EXPECT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
      EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
      EXPECT_EQ(F.add(a, F.neg(a)), F.zero());
      EXPECT_EQ(F.sub(F.add(a, b), b), a);
      const Code n = random_nonzero(F);
      EXPECT_EQ(F.mul(n, F.inv(n)), F.one());
      EXPECT_EQ(F.pow(n, F.order() - 1), F.one());
      EXPECT_EQ(F.div(F.mul(a, n), n), a);
    }
  }
}

TEST(Field, FrobeniusIsAutomorphism) {
  for (const Field& F : fixtures::small_fields()) {
    for (int t = 0; t < 300; ++t) {
      const Code a = random_elem(F), b = random_elem(F);
      for (unsigned s = 0; s <= F.degree(); ++s) {
        EXPECT_EQ(F.frobenius(F.add(a, b), s), F.add(F.frobenius(a, s), F.frobenius(b, s)));
        EXPECT_EQ(F.frobenius(F.mul(a, b), s), F.mul(F.frobenius(a, s), F.frobenius(b, s)));
        EXPECT_EQ(F.inverse_frobenius(F.frobenius(a, s), s), a);
      }
      EXPECT_EQ(F.frobenius(a, 1), F.pow(a, F.characteristic()));
    }
  }
}

TEST(Field, CanonicalOrder) {
  for (const Field& F : fixtures::small_fields()) {
    std::vector<Code> all;
    for (std::uint64_t i = 0; i < F.order(); ++i) {
      all.push_back(F.element(i));
      EXPECT_EQ(F.index(F.element(i)), i);
      EXPECT_TRUE(F.is_valid(F.element(i)));
    }
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    EXPECT_EQ(std::set<Code>(all.begin(), all.end()).size(), F.order());
  }
}

TEST(Field, ElemWrappersAndFormatting) {
  const Field F9 = Field::make(3, 2);
  const gf::FieldElem a(F9, F9.from_digits(std::vector<std::uint64_t>{1, 2}));
  EXPECT_EQ(F9.format(a.code()), "[1,2]");
  EXPECT_EQ((a * a.inv()).code(), F9.one());
  EXPECT_EQ(a.coeffs(), (std::vector<std::uint64_t>{1, 2}));
  const gf::FieldElem b(Field::make(3, 1), 1);
  EXPECT_THROW(a + b, Error);
  EXPECT_THROW(gf::FieldElem(F9, 3), Error);  // digit 3 is not below p
}

TEST(Embedding, IsRingHomomorphism) {
  for (auto [p, a, b] : std::vector<std::tuple<std::uint64_t, unsigned, unsigned>>{{2, 1, 2}, {2, 2, 4}, {3, 1, 2}, {2, 2, 6}, {3, 2, 4}}) {
    const Field S = Field::make(p, a), T = Field::make(p, b);
    const gf::Embedding emb(S, T);
    // root check by exhaustive evaluation of the source modulus
    Code acc = 0;
    for (std::size_t i = S.modulus().size(); i-- > 0;)
      acc = T.add(T.mul(acc, emb.root()), T.from_integer(static_cast<std::int64_t>(S.modulus()[i])));
    EXPECT_EQ(acc, 0u);
    std::set<Code> image;
    for (std::uint64_t i = 0; i < S.order(); ++i)
      for (std::uint64_t j = 0; j < S.order(); ++j) {
        const Code x = S.element(i), y = S.element(j);
        ASSERT_EQ(emb(S.add(x, y)), T.add(emb(x), emb(y)));
        ASSERT_EQ(emb(S.mul(x, y)), T.mul(emb(x), emb(y)));
        image.insert(emb(x));
      }
    EXPECT_EQ(image.size(), S.order());
    EXPECT_EQ(emb(S.one()), T.one());
  }
  EXPECT_THROW(gf::Embedding(Field::make(2, 2), Field::make(2, 3)), Error);
  EXPECT_THROW(gf::Embedding(Field::make(2, 1), Field::make(3, 2)), Error);
}

TEST(NormEquation, SolutionsLiveInQuadraticExtension) {
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const auto ctx = FermatContext::from_q(q);
    const Field F = Field::make(ctx.p, 2 * ctx.nu);
    const auto w = gf::solve_norm_like(F, q);
    EXPECT_EQ(F.pow(w.code(), q + 1), F.neg(F.one()));
    // the first solution in canonical order, checked exhaustively
    for (std::uint64_t i = 0; i < F.index(w.code()); ++i)
      EXPECT_NE(F.pow(F.element(i), q + 1), F.neg(F.one()));
    // exactly q+1 solutions
    std::size_t count = 0;
    for (std::uint64_t i = 0; i < F.order(); ++i) count += F.pow(F.element(i), q + 1) == F.neg(F.one());
    EXPECT_EQ(count, q + 1);
  }
  EXPECT_EQ(gf::solve_norm_like(Field::make(2, 2), 2).code(), 1u);
  try {
    gf::solve_norm_like(Field::make(3, 1), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFound);
  }
}
