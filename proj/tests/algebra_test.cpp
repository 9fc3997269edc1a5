#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "d4m/algebra.hpp"
#include "oracles.hpp"

namespace d4m {
namespace {

Assoc schedule() { return Assoc::from_triples(oracle::schedule_triples()); }

Assoc single(Key r, Key c, Key v) {
  const std::vector<Key> rows{std::move(r)};
  const std::vector<Key> cols{std::move(c)};
  const std::vector<Key> vals{std::move(v)};
  return Assoc::from_triples(rows, cols, vals);
}

std::size_t count_parts(const std::string& s, const std::string& sep) {
  std::size_t n = 1;
  for (auto p = s.find(sep); p != std::string::npos; p = s.find(sep, p + sep.size())) ++n;
  return n;
}

std::vector<Coord> pattern(const Assoc& a) { return {a.coords().begin(), a.coords().end()}; }

TEST(Multiply, ScheduleTimesTranspose) {
  const Assoc a = logical(schedule());
  const Assoc c = multiply(a, transpose(a));
  EXPECT_EQ(invariant_violation(c), "");
  EXPECT_EQ(c.cell_value("0730", "0730"), Key(2));
  EXPECT_EQ(c.cell_value("0730", 1400), Key(1));  // Casey
  EXPECT_FALSE(c.cell_value("0730", 1145).has_value());

  const auto dense = oracle::dense_multiply(oracle::cells_of(a), oracle::cells_of(transpose(a)));
  ASSERT_EQ(c.nnz(), dense.size());
  for (const auto& [rc, v] : dense) EXPECT_EQ(c.cell_value(rc.first, rc.second), Key(v));
}

TEST(Multiply, TextOperandsUseLogicalPattern) {
  const Assoc a = oracle::to_assoc({{{"r", "k"}, Key("txt")}});
  const Assoc b = oracle::to_assoc({{{"k", "c"}, Key(3)}});
  EXPECT_EQ(multiply(a, b), single("r", "c", 3));
}

TEST(Multiply, DisjointInnerKeysGiveEmpty) {
  EXPECT_TRUE(multiply(single("r", "k", 1), single("other", "c", 1)).empty());
}

TEST(Multiply, ScalarCase) {
  EXPECT_EQ(multiply(single("r", "k", 1), single("k", "c", 1)), single("r", "c", 1));
}

TEST(Multiply, CancellationDropsCell) {
  const Assoc a = oracle::to_assoc({{{"r", "k1"}, Key(1)}, {{"r", "k2"}, Key(1)}});
  const Assoc b = oracle::to_assoc({{{"k1", "c"}, Key(2)}, {{"k2", "c"}, Key(-2)}});
  const Assoc c = multiply(a, b);
  EXPECT_TRUE(c.empty());
  EXPECT_EQ(invariant_violation(c), "");
}

TEST(Multiply, RandomAgainstDenseOracle) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const auto ca = oracle::random_cells(rng, 20, 15, 80, oracle::Values::numeric, "r", "k");
    const auto cb = oracle::random_cells(rng, 15, 18, 80, oracle::Values::numeric, "k", "c");
    const Assoc c = multiply(oracle::to_assoc(ca), oracle::to_assoc(cb));
    ASSERT_EQ(invariant_violation(c), "");
    const auto dense = oracle::dense_multiply(ca, cb);
    ASSERT_EQ(c.nnz(), dense.size());
    for (const auto& [rc, v] : dense) {
      const auto got = c.cell_value(rc.first, rc.second);
      ASSERT_TRUE(got.has_value());
      ASSERT_NEAR(got->number(), v, 1e-12);
    }
  }
}

TEST(Multiply, RightIdentity) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Assoc a =
        oracle::to_assoc(oracle::random_cells(rng, 10, 10, 30, oracle::Values::numeric));
    Triples id;
    for (const Key& k : a.cols()) {
      id.rows.push_back(k);
      id.cols.push_back(k);
      id.vals.emplace_back(1);
    }
    ASSERT_EQ(multiply(a, Assoc::from_triples(id)), a);
  }
}

TEST(CatKeyMul, ScheduleTimesTranspose) {
  const Assoc a = schedule();
  const Assoc c = cat_key_mul(a, transpose(a));
  EXPECT_EQ(invariant_violation(c), "");
  EXPECT_EQ(c.cell_value("0730", "0730"), Key("Alice;Casey"));
  EXPECT_EQ(c.cell_value(1145, 1145), Key("Bob;Joe"));
  EXPECT_EQ(c.cell_value(1145, 1400), Key("Bob"));
  EXPECT_EQ(pattern(c), pattern(multiply(logical(a), logical(transpose(a)))));
}

TEST(CatKeyMul, SingletonHasNoSeparator) {
  const Assoc c = cat_key_mul(single("r", "t1", 4), single("t1", "c", "x"));
  EXPECT_EQ(c.cell_value("r", "c"), Key("t1"));
}

TEST(CatKeyMul, DisjointGivesEmpty) {
  EXPECT_TRUE(cat_key_mul(single("r", "a", 1), single("b", "c", 1)).empty());
}

TEST(CatKeyMul, CustomSeparatorAndNumberKeys) {
  const Assoc a = oracle::to_assoc({{{"r", Key(2)}, Key(1)}, {{"r", Key(10)}, Key(1)}});
  const Assoc b = oracle::to_assoc({{{Key(2), "c"}, Key(1)}, {{Key(10), "c"}, Key(1)}});
  EXPECT_EQ(cat_key_mul(a, b, {" | "}).cell_value("r", "c"), Key("2 | 10"));
  EXPECT_THROW(cat_key_mul(a, b, {""}), std::invalid_argument);
}

TEST(CatValMul, ScheduleTimesTranspose) {
  const Assoc a = schedule();
  const Assoc c = cat_val_mul(a, transpose(a));
  EXPECT_EQ(invariant_violation(c), "");
  EXPECT_EQ(c.cell_value("0730", "0730"), Key("30;30;30;30"));
  EXPECT_EQ(c.cell_value(1400, 1145), Key("15;60"));
}

TEST(CatValMul, SinglePair) {
  EXPECT_EQ(cat_val_mul(single("r", "k", 5), single("k", "c", 7)).cell_value("r", "c"),
            Key("5;7"));
  EXPECT_EQ(cat_val_mul(single("r", "k", 0.25), single("k", "c", "w")).cell_value("r", "c"),
            Key("0.25;w"));
}

TEST(CatValMul, NoContributionGivesEmpty) {
  EXPECT_TRUE(cat_val_mul(single("r", "a", 1), single("b", "c", 1)).empty());
}

TEST(CatProducts, RandomAgainstBruteForce) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const auto kind_a = static_cast<oracle::Values>(trial % 3);
    const auto kind_b = static_cast<oracle::Values>((trial / 3) % 3);
    const auto ca = oracle::random_cells(rng, 12, 10, 40, kind_a, "r", "k");
    const auto cb = oracle::random_cells(rng, 10, 12, 40, kind_b, "k", "c");
    const Assoc a = oracle::to_assoc(ca);
    const Assoc b = oracle::to_assoc(cb);

    const Assoc keys = cat_key_mul(a, b);
    const Assoc vals = cat_val_mul(a, b);
    const Assoc counts = multiply(logical(a), logical(b));
    ASSERT_EQ(invariant_violation(keys), "");
    ASSERT_EQ(invariant_violation(vals), "");
    ASSERT_EQ(pattern(keys), pattern(counts));
    ASSERT_EQ(pattern(vals), pattern(counts));

    const auto expect_keys = oracle::brute_concat(ca, cb, false);
    const auto expect_vals = oracle::brute_concat(ca, cb, true);
    ASSERT_EQ(keys.nnz(), expect_keys.size());
    for (const auto& [rc, s] : expect_keys) ASSERT_EQ(keys.cell_value(rc.first, rc.second), Key(s));
    for (const auto& [rc, s] : expect_vals) ASSERT_EQ(vals.cell_value(rc.first, rc.second), Key(s));

    for (std::size_t n = 0; n < counts.nnz(); ++n) {
      const auto k = count_parts(keys.value(n).text(), ";");
      ASSERT_EQ(static_cast<double>(k), counts.value(n).number());
      ASSERT_EQ(count_parts(vals.value(n).text(), ";"), 2 * k);
    }
  }
}

TEST(Add, BothNumeric) {
  EXPECT_EQ(add(single("r", "c", 2), single("r", "c", 3)), single("r", "c", 5));
  EXPECT_TRUE(add(single("r", "c", 2), single("r", "c", -2)).empty());
}

TEST(Add, BothTextTakesMax) {
  EXPECT_EQ(add(single("r", "c", "a"), single("r", "c", "b")), single("r", "c", "b"));
  EXPECT_EQ(add(single("r", "c", "b"), single("r", "c", "a")), single("r", "c", "b"));
}

TEST(Add, BothTextDisjointIsUnion) {
  const Assoc sum = add(single("r1", "c1", "x"), single("r2", "c2", "y"));
  EXPECT_EQ(sum.nnz(), 2u);
  EXPECT_EQ(sum.cell_value("r1", "c1"), Key("x"));
  EXPECT_EQ(sum.cell_value("r2", "c2"), Key("y"));
  EXPECT_FALSE(sum.cell_value("r1", "c2").has_value());
}

TEST(Add, NumericPlusTextIndicator) {
  EXPECT_EQ(add(single("r", "c", 2), single("r", "c", "x")), single("r", "c", 3));
  EXPECT_EQ(add(single("r", "c", "x"), single("r", "c", 2)), single("r", "c", 3));
  const Assoc spread = add(single("r", "c", 2), single("r", "d", "x"));
  EXPECT_EQ(spread.cell_value("r", "c"), Key(2));
  EXPECT_EQ(spread.cell_value("r", "d"), Key(1));
  EXPECT_TRUE(add(single("r", "c", -1), single("r", "c", "x")).empty());
}

TEST(Add, EmptyIsIdentity) {
  std::mt19937_64 rng(31);
  for (int kind = 0; kind < 3; ++kind) {
    const Assoc a = oracle::to_assoc(
        oracle::random_cells(rng, 8, 8, 20, static_cast<oracle::Values>(kind)));
    EXPECT_EQ(add(a, Assoc{}), a);
    EXPECT_EQ(add(Assoc{}, a), a);
  }
  EXPECT_EQ(add(Assoc{}, Assoc{}), Assoc{});
}

TEST(Add, RandomAgainstCaseOracle) {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 60; ++trial) {
    const auto kind_a = trial % 2 ? oracle::Values::text : oracle::Values::numeric;
    const auto kind_b = (trial / 2) % 2 ? oracle::Values::text : oracle::Values::numeric;
    const auto ca = oracle::random_cells(rng, 10, 10, 30, kind_a);
    const auto cb = oracle::random_cells(rng, 10, 10, 30, kind_b);
    const Assoc c = add(oracle::to_assoc(ca), oracle::to_assoc(cb));
    ASSERT_EQ(invariant_violation(c), "");
    const auto expect = oracle::cellwise_add(ca, cb);
    if (expect.text) {
      ASSERT_EQ(oracle::cells_of(c), expect.keys);
    } else {
      ASSERT_EQ(c.nnz(), expect.numbers.size());
      for (const auto& [rc, v] : expect.numbers) {
        ASSERT_NEAR(c.cell_value(rc.first, rc.second)->number(), v, 1e-12);
      }
    }
  }
}

TEST(Add, CommutativeAndAssociative) {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 40; ++trial) {
    const auto kind = trial % 2 ? oracle::Values::text : oracle::Values::numeric;
    const Assoc a = oracle::to_assoc(oracle::random_cells(rng, 9, 9, 25, kind));
    const Assoc b = oracle::to_assoc(oracle::random_cells(rng, 9, 9, 25, kind));
    ASSERT_EQ(add(a, b), add(b, a));
    if (kind == oracle::Values::numeric) {
      const Assoc c = oracle::to_assoc(oracle::random_cells(rng, 9, 9, 25, kind));
      const Assoc left = add(add(a, b), c);
      const Assoc right = add(a, add(b, c));
      ASSERT_EQ(pattern(left), pattern(right));
      for (std::size_t n = 0; n < left.nnz(); ++n) {
        ASSERT_NEAR(left.value(n).number(), right.value(n).number(), 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace d4m
