#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <tuple>
#include <sstream>
#include <vector>

#include "partition_bounds/groups/catalog.hpp"
#include "partition_bounds/groups/constructions.hpp"
#include "partition_bounds/groups/cover.hpp"
#include "partition_bounds/groups/phi.hpp"
#include "partition_bounds/groups/sandwich.hpp"
#include "partition_bounds/groups/structure.hpp"
#include "partition_bounds/groups/subset.hpp"
#include "partition_bounds/groups/thick.hpp"

using namespace partition_bounds;
using namespace partition_bounds::groups;

namespace {

// Oracles below work on raw masks and the Cayley table only.

std::vector<Element> mask_elements(std::uint64_t m) {
  std::vector<Element> out;
  for (Element i = 0; i < 64; ++i)
    if ((m >> i) & 1) out.push_back(i);
  return out;
}

std::uint64_t full_mask(std::size_t n) { return n == 64 ? ~0ULL : (1ULL << n) - 1; }

std::uint64_t mask_product(const FiniteGroup& g, std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  for (Element x : mask_elements(a))
    for (Element y : mask_elements(b)) out |= 1ULL << g.mul(x, y);
  return out;
}

std::uint64_t mask_inverse(const FiniteGroup& g, std::uint64_t a) {
  std::uint64_t out = 0;
  for (Element x : mask_elements(a)) out |= 1ULL << g.inv(x);
  return out;
}

std::uint64_t single(Element x) { return 1ULL << x; }

std::uint64_t to_mask(const GroupSubset& s) {
  std::uint64_t m = 0;
  for (Element x : s.elements()) m |= single(x);
  return m;
}

// Lex-least minimum F with FA = G by scanning every subset.
std::pair<std::size_t, std::vector<Element>> brute_cov(const FiniteGroup& g, std::uint64_t a) {
  const std::size_t n = g.order();
  std::size_t best = n + 1;
  std::vector<Element> witness;
  for (std::uint64_t f = 1; f <= full_mask(n); ++f) {
    const std::size_t k = std::popcount(f);
    if (k > best) continue;
    if (mask_product(g, f, a) != full_mask(n)) continue;
    auto el = mask_elements(f);
    if (k < best || el < witness) {
      best = k;
      witness = el;
    }
  }
  return {best, witness};
}

std::pair<std::size_t, std::vector<Element>> brute_pack(const FiniteGroup& g, std::uint64_t a) {
  const std::size_t n = g.order();
  std::size_t best = 0;
  std::vector<Element> witness;
  for (std::uint64_t e = 1; e <= full_mask(n); ++e) {
    auto el = mask_elements(e);
    bool ok = true;
    for (std::size_t i = 0; i < el.size() && ok; ++i)
      for (std::size_t j = i + 1; j < el.size() && ok; ++j)
        ok = (mask_product(g, single(el[i]), a) & mask_product(g, single(el[j]), a)) == 0;
    if (!ok) continue;
    if (el.size() > best || (el.size() == best && el < witness)) {
      best = el.size();
      witness = el;
    }
  }
  return {best, witness};
}

bool brute_thick(const FiniteGroup& g, std::uint64_t a, std::size_t m) {
  const std::size_t n = g.order();
  for (std::uint64_t f = 1; f <= full_mask(n); ++f) {
    if (static_cast<std::size_t>(std::popcount(f)) > m) continue;
    bool some = false;
    for (Element x = 0; x < n && !some; ++x) some = (mask_product(g, f, single(x)) & ~a) == 0;
    if (!some) return false;
  }
  return true;
}

std::size_t brute_cov_value(const FiniteGroup& g, std::uint64_t a) { return brute_cov(g, a).first; }

// Phi_G(n) over every labelling of elements by n cell names, which covers
// every partition into at most n cells many times over.
std::size_t brute_phi(const FiniteGroup& g, std::size_t n) {
  const std::size_t order = g.order();
  std::vector<std::size_t> label(order, 0);
  std::size_t best = 0;
  while (true) {
    std::vector<std::uint64_t> cells(n, 0);
    for (std::size_t x = 0; x < order; ++x) cells[label[x]] |= single(static_cast<Element>(x));
    std::size_t worst = SIZE_MAX;
    for (auto c : cells)
      if (c) worst = std::min(worst, brute_cov_value(g, mask_product(g, c, mask_inverse(g, c))));
    best = std::max(best, worst);
    std::size_t i = 0;
    while (i < order && ++label[i] == n) label[i++] = 0;
    if (i == order) break;
  }
  return best;
}

std::vector<FiniteGroup> groups_up_to(std::size_t order) { return small_groups(order); }

}  // namespace

TEST(Constructions, CyclicInverseIsNegation) {
  const auto g = cyclic(4);
  ASSERT_EQ(g.order(), 4u);
  for (Element x = 0; x < 4; ++x) EXPECT_EQ(g.inv(x), (4 - x) % 4);
}

TEST(Constructions, SymmetricThreeHasOneIndexTwoSubgroup) {
  const auto g = symmetric(3);
  EXPECT_EQ(g.order(), 6u);
  EXPECT_EQ(g.identity(), 0u);
  EXPECT_FALSE(g.is_abelian());
  std::size_t index_two = 0;
  // Brute force: every subset closed under products.
  for (std::uint64_t m = 1; m <= full_mask(6); ++m)
    if ((m & 1) && mask_product(g, m, m) == m && std::popcount(m) == 3) ++index_two;
  EXPECT_EQ(index_two, 1u);
  std::size_t via_enumeration = 0;
  for (const auto& h : all_subgroups(g)) via_enumeration += h.size() == 3;
  EXPECT_EQ(via_enumeration, 1u);
}

TEST(Constructions, GeneratorsClosure) {
  const auto g = group_from_generators(3, {parse_cycles("(12)", 3), parse_cycles("(123)", 3)});
  EXPECT_EQ(g.order(), 6u);
  EXPECT_FALSE(g.is_abelian());
  EXPECT_EQ(group_from_generators(4, {parse_cycles("(1234)", 4)}).order(), 4u);
  EXPECT_EQ(group_from_generators(5, {parse_cycles("(12345)", 5), parse_cycles("(12)", 5)}).order(), 120u);
  EXPECT_THROW(group_from_generators(8, {parse_cycles("(12345678)", 8), parse_cycles("(12)", 8)}, 5040),
               std::invalid_argument);
  EXPECT_THROW(group_from_generators(3, {Permutation{0, 0, 1}}), std::invalid_argument);
}

TEST(Constructions, ParseCycles) {
  EXPECT_EQ(parse_cycles("(12)", 3), (Permutation{1, 0, 2}));
  EXPECT_EQ(parse_cycles("(1 2 3)", 3), (Permutation{1, 2, 0}));
  // Right to left: (23) acts first, so 1 -> 2, 2 -> 3, 3 -> 1.
  EXPECT_EQ(parse_cycles("(12)(23)", 3), (Permutation{1, 2, 0}));
  EXPECT_EQ(parse_cycles("", 2), (Permutation{0, 1}));
  EXPECT_EQ(parse_cycles("(1,10)", 10)[9], 0u);
  EXPECT_THROW(parse_cycles("(14)", 3), std::invalid_argument);
  EXPECT_THROW(parse_cycles("(121)", 3), std::invalid_argument);
  EXPECT_THROW(parse_cycles("(12", 3), std::invalid_argument);
  EXPECT_EQ(cycle_string(parse_cycles("(13)(24)", 4)), "(13)(24)");
  EXPECT_EQ(cycle_string(Permutation{0, 1}), "e");
}

TEST(Constructions, OrdersAndShapes) {
  EXPECT_EQ(dihedral(4).order(), 8u);
  EXPECT_FALSE(dihedral(3).is_abelian());
  EXPECT_EQ(alternating(4).order(), 12u);
  const auto q8 = dicyclic(2);
  EXPECT_EQ(q8.order(), 8u);
  // Q8 has a single involution.
  std::size_t involutions = 0;
  for (Element x = 0; x < 8; ++x) involutions += q8.element_order(x) == 2;
  EXPECT_EQ(involutions, 1u);
  // D4 has five.
  std::size_t d4 = 0;
  for (Element x = 0; x < 8; ++x) d4 += dihedral(4).element_order(x) == 2;
  EXPECT_EQ(d4, 5u);
  const auto p = direct_product(cyclic(2), symmetric(3));
  EXPECT_EQ(p.order(), 12u);
  EXPECT_TRUE(direct_product(cyclic(2), cyclic(3)).is_abelian());
  EXPECT_THROW(symmetric(8), std::invalid_argument);
}

TEST(Constructions, CatalogClassesAreDistinct) {
  const auto all = groups_up_to(12);
  ASSERT_EQ(all.size(), 24u);
  // Order statistics separate the 24 classes: (order, abelian, sorted element orders, subgroup count).
  std::set<std::tuple<std::size_t, bool, std::vector<std::size_t>, std::size_t>> signatures;
  for (const auto& g : all) {
    std::vector<std::size_t> orders;
    for (Element x = 0; x < g.order(); ++x) orders.push_back(g.element_order(x));
    std::sort(orders.begin(), orders.end());
    signatures.emplace(g.order(), g.is_abelian(), orders, all_subgroups(g).size());
    EXPECT_EQ(g.identity(), 0u) << g.name();
  }
  EXPECT_EQ(signatures.size(), 24u);
}

TEST(FiniteGroupValidation, RejectsBadTables) {
  EXPECT_THROW(FiniteGroup::from_table(2, {0, 1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(FiniteGroup::from_table(2, {0, 1, 1}), std::invalid_argument);
  EXPECT_THROW(FiniteGroup::from_table(2, {0, 2, 1, 0}), std::invalid_argument);
  // A Latin square with an identity that is not associative (order 5 loop).
  const std::vector<Element> loop = {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  EXPECT_THROW(FiniteGroup::from_table(5, loop), std::invalid_argument);
  // Identity need not be element 0.
  const auto g = FiniteGroup::from_table(2, {1, 0, 0, 1});
  EXPECT_EQ(g.identity(), 1u);
}

TEST(GroupSpec, RoundTripAndErrors) {
  const auto s3 = symmetric(3);
  std::istringstream in("# S3\n" + format_group_spec(s3) + "\n# trailing\n");
  const auto back = parse_group_spec(in);
  EXPECT_TRUE(back.same_table(s3));

  std::istringstream shifted("order 2\nidentity 1\n1 0 # row\n0 1\n");
  EXPECT_EQ(parse_group_spec(shifted).identity(), 1u);
  std::istringstream wrong_identity("order 2\nidentity 0\n1 0\n0 1\n");
  EXPECT_THROW(parse_group_spec(wrong_identity), std::invalid_argument);
  std::istringstream short_row("order 2\nidentity 0\n0 1\n1\n");
  EXPECT_THROW(parse_group_spec(short_row), std::invalid_argument);
  std::istringstream missing("order 2\n0 1\n1 0\n");
  EXPECT_THROW(parse_group_spec(missing), std::invalid_argument);

  const auto path = std::filesystem::temp_directory_path() / "pb_group_spec_test.txt";
  std::ofstream(path) << format_group_spec(dihedral(3));
  EXPECT_TRUE(parse_group_expression(path.string()).same_table(dihedral(3)));
  std::filesystem::remove(path);
}

TEST(GroupSpec, Expressions) {
  EXPECT_EQ(parse_group_expression("cyclic:6").order(), 6u);
  EXPECT_EQ(parse_group_expression("sym:4").order(), 24u);
  EXPECT_EQ(parse_group_expression("alt:4").order(), 12u);
  EXPECT_EQ(parse_group_expression("dic:3").order(), 12u);
  EXPECT_EQ(parse_group_expression("dihedral:5").order(), 10u);
  const auto p = parse_group_expression("product:cyclic:2,sym:3");
  EXPECT_EQ(p.order(), 12u);
  EXPECT_TRUE(p.same_table(direct_product(cyclic(2), symmetric(3))));
  EXPECT_EQ(parse_group_expression("product:cyclic:2,cyclic:2,cyclic:2").order(), 8u);
  EXPECT_THROW(parse_group_expression("cyclic:x"), std::invalid_argument);
  EXPECT_THROW(parse_group_expression("cyclic:0"), std::invalid_argument);
  EXPECT_THROW(parse_group_expression("product:cyclic:2"), std::invalid_argument);
  EXPECT_THROW(parse_group_expression("no/such/file"), std::invalid_argument);
}

TEST(SetAlgebra, Examples) {
  const auto z5 = cyclic(5);
  const auto a = GroupSubset::of(z5, {0, 1});
  EXPECT_EQ(product_set(a, inverse_set(a)), GroupSubset::of(z5, {4, 0, 1}));
  const auto e = GroupSubset::of(z5, {0});
  for (std::uint64_t k = 1; k < 20; ++k) EXPECT_EQ(power(e, k), e);
  EXPECT_EQ(power(a, 3), GroupSubset::of(z5, {0, 1, 2, 3}));
  EXPECT_THROW(power(a, 0), std::invalid_argument);
  const auto z4 = cyclic(4);
  EXPECT_EQ(difference_set(GroupSubset::of(z4, {0, 1})), GroupSubset::of(z4, {3, 0, 1}));
  EXPECT_EQ(difference_set(GroupSubset::full(z4)), GroupSubset::full(z4));
  EXPECT_TRUE(difference_set(GroupSubset(z4)).empty());
  EXPECT_THROW(product_set(a, GroupSubset::of(z4, {0})), std::invalid_argument);
  EXPECT_EQ(GroupSubset::from_bitstring(z5, "11000"), a);
  EXPECT_EQ(a.to_bitstring(), "11000");
  EXPECT_THROW(GroupSubset::from_bitstring(z5, "110"), std::invalid_argument);
  EXPECT_EQ(GroupSubset::from_mask(z5, 0b11), a);
}

TEST(SetAlgebra, PowerMatchesIteratedProduct) {
  std::mt19937_64 rng(3);
  for (const auto& g : groups_up_to(12)) {
    for (int t = 0; t < 20; ++t) {
      const std::uint64_t m = (rng() & full_mask(g.order())) | 1;
      const auto a = GroupSubset::from_mask(g, m);
      EXPECT_EQ(inverse_set(inverse_set(a)), a);
      std::uint64_t it = m;
      for (std::uint64_t k = 1; k <= 9; ++k) {
        EXPECT_EQ(to_mask(power(a, k)), it) << g.name() << " k=" << k;
        it = mask_product(g, it, m);
      }
    }
  }
}

TEST(Cover, Examples) {
  const auto z5 = cyclic(5);
  EXPECT_EQ(covering_number(GroupSubset::full(z5)).value, 1u);
  EXPECT_EQ(covering_number(GroupSubset::of(z5, {0})).value, 5u);
  const auto c = covering_number(GroupSubset::of(z5, {0, 1}));
  EXPECT_EQ(c.value, 3u);
  EXPECT_TRUE(c.exact);
  EXPECT_EQ(c.witness.elements(), (std::vector<Element>{0, 1, 3}));
  EXPECT_THROW(covering_number(GroupSubset(z5)), std::invalid_argument);
  const auto greedy = covering_number(GroupSubset::of(z5, {0, 1}), CoverMode::greedy);
  EXPECT_FALSE(greedy.exact);
  EXPECT_GE(greedy.value, 3u);
  EXPECT_EQ(product_set(greedy.witness, GroupSubset::of(z5, {0, 1})), GroupSubset::full(z5));
}

TEST(Cover, MatchesBruteForceWithLexLeastWitness) {
  for (const auto& g : groups_up_to(8)) {
    for (std::uint64_t m = 1; m <= full_mask(g.order()); ++m) {
      const auto a = GroupSubset::from_mask(g, m);
      const auto got = covering_number(a);
      const auto [value, witness] = brute_cov(g, m);
      ASSERT_EQ(got.value, value) << g.name() << " A=" << a.to_bitstring();
      ASSERT_EQ(got.witness.elements(), witness) << g.name() << " A=" << a.to_bitstring();
    }
  }
}

TEST(Pack, ExamplesAndBruteForce) {
  const auto z4 = cyclic(4);
  EXPECT_EQ(packing_index(GroupSubset::of(z4, {0})).value, 4u);
  EXPECT_EQ(packing_index(GroupSubset::full(z4)).value, 1u);
  EXPECT_EQ(packing_index(GroupSubset::of(z4, {0, 1})).value, 2u);
  EXPECT_THROW(packing_index(GroupSubset(z4)), std::invalid_argument);
  for (const auto& g : groups_up_to(8)) {
    for (std::uint64_t m = 1; m <= full_mask(g.order()); ++m) {
      const auto a = GroupSubset::from_mask(g, m);
      const auto got = packing_index(a);
      const auto [value, witness] = brute_pack(g, m);
      ASSERT_EQ(got.value, value) << g.name() << " A=" << a.to_bitstring();
      ASSERT_EQ(got.witness.elements(), witness) << g.name() << " A=" << a.to_bitstring();
    }
  }
}

TEST(Invariants, DifferenceIdentityAndChain) {
  std::mt19937_64 rng(11);
  for (const auto& g : groups_up_to(12)) {
    const std::size_t n = g.order();
    const bool exhaustive = n <= 10;
    const std::uint64_t count = exhaustive ? full_mask(n) : 300;
    for (std::uint64_t t = 1; t <= count; ++t) {
      const std::uint64_t m = exhaustive ? t : ((rng() & full_mask(n)) | single(rng() % n));
      const auto a = GroupSubset::from_mask(g, m);
      const auto d = difference_set(a);
      EXPECT_EQ(to_mask(d), mask_product(g, m, mask_inverse(g, m)));
      const std::size_t cov = covering_number(d).value;
      const std::size_t pack = packing_index(a).value;
      EXPECT_LE(cov, pack) << g.name() << " A=" << a.to_bitstring();
      EXPECT_LE(pack * a.size(), n);
    }
  }
}

TEST(Thick, Examples) {
  const auto z4 = cyclic(4);
  for (std::size_t m = 1; m <= 6; ++m) EXPECT_TRUE(is_m_thick(GroupSubset::full(z4), m));
  EXPECT_TRUE(is_m_thick(GroupSubset::of(z4, {0, 1, 2}), 2));
  EXPECT_FALSE(is_m_thick(GroupSubset::of(z4, {0}), 2));
  EXPECT_TRUE(is_m_thick(GroupSubset::of(z4, {0}), 1));
  EXPECT_THROW(is_m_thick(GroupSubset::of(z4, {0}), 0), std::invalid_argument);
}

TEST(Thick, MatchesBruteForceAndDifferenceSet) {
  for (const auto& g : groups_up_to(8)) {
    const auto full = GroupSubset::full(g);
    for (std::uint64_t m = 1; m <= full_mask(g.order()); ++m) {
      const auto a = GroupSubset::from_mask(g, m);
      EXPECT_EQ(is_m_thick(a, 2), difference_set(a) == full) << g.name() << " A=" << a.to_bitstring();
      for (std::size_t k : {1u, 2u, 3u})
        ASSERT_EQ(is_m_thick(a, k), brute_thick(g, m, k)) << g.name() << " m=" << k << " A=" << a.to_bitstring();
    }
  }
}

TEST(Thick, ShiftWitnessAtDeskScale) {
  // Every partition into n <= 3 cells has a cell A and F with
  // |F| <= m^(n-1) making FA m-thick.
  for (const auto& g : groups_up_to(6)) {
    const std::size_t order = g.order();
    for (std::size_t n = 1; n <= 3; ++n) {
      std::vector<std::size_t> label(order, 0);
      while (true) {
        std::vector<GroupSubset> cells(n, GroupSubset(g));
        for (std::size_t x = 0; x < order; ++x) cells[label[x]].insert(static_cast<Element>(x));
        for (std::size_t m = 1; m <= 3; ++m) {
          std::size_t cap = 1;
          for (std::size_t i = 1; i < n; ++i) cap *= m;
          bool some = false;
          for (const auto& c : cells) {
            if (c.empty()) continue;
            auto f = thick_shift_witness(c, m, cap);
            if (f) {
              EXPECT_LE(f->size(), cap);
              EXPECT_TRUE(brute_thick(g, to_mask(product_set(*f, c)), m));
              some = true;
            }
          }
          EXPECT_TRUE(some) << g.name() << " n=" << n << " m=" << m;
        }
        std::size_t i = 0;
        while (i < order && ++label[i] == n) label[i++] = 0;
        if (i == order) break;
      }
    }
  }
}

TEST(Thick, ShiftWitnessIsLeastBySizeThenLex) {
  const auto g = cyclic(6);
  const auto a = GroupSubset::of(g, {0, 1});
  const auto f = thick_shift_witness(a, 2, 6);
  ASSERT_TRUE(f);
  // Brute force over F by size then lex.
  std::optional<std::vector<Element>> best;
  for (std::size_t size = 1; size <= 6 && !best; ++size)
    for (std::uint64_t m = 1; m <= full_mask(6); ++m) {
      if (static_cast<std::size_t>(std::popcount(m)) != size) continue;
      if (!brute_thick(g, mask_product(g, m, to_mask(a)), 2)) continue;
      auto el = mask_elements(m);
      if (!best || el < *best) best = el;
    }
  ASSERT_TRUE(best);
  EXPECT_EQ(f->elements(), *best);
  EXPECT_FALSE(thick_shift_witness(GroupSubset::of(g, {0}), 3, 1));
}

TEST(Phi, Examples) {
  EXPECT_EQ(phi_g(cyclic(2), 2).value, 2u);
  EXPECT_EQ(phi_g(cyclic(3), 2).value, 1u);
  for (const auto& g : groups_up_to(8)) EXPECT_EQ(phi_g(g, 1).value, 1u) << g.name();
  EXPECT_THROW(phi_g(cyclic(3), 0), std::invalid_argument);
  EXPECT_THROW(phi_g(cyclic(11), 2), std::invalid_argument);
  const auto r = phi_g(cyclic(2), 2);
  EXPECT_EQ(r.witness, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.partitions, 2u);
}

TEST(Phi, MatchesBruteForceAndIsMonotone) {
  for (const auto& g : groups_up_to(6)) {
    std::size_t prev = 0;
    for (std::size_t n = 1; n <= g.order(); ++n) {
      const auto r = phi_g(g, n);
      EXPECT_EQ(r.value, brute_phi(g, n)) << g.name() << " n=" << n;
      EXPECT_GE(r.value, prev);
      EXPECT_LE(r.value, n);
      prev = r.value;
      // The witness attains the value.
      std::size_t worst = SIZE_MAX;
      for (const auto& c : partition_cells(g, r.witness))
        worst = std::min(worst, covering_number(difference_set(c)).value);
      EXPECT_EQ(worst, r.value);
    }
  }
}

TEST(Phi, RandomModeIsSeededLowerBound) {
  const auto g = cyclic(8);
  const std::size_t exact = phi_g(g, 3).value;
  PhiOptions o;
  o.mode = PhiMode::random;
  o.seed = 5;
  o.samples = 500;
  const auto a = phi_g(g, 3, o), b = phi_g(g, 3, o);
  EXPECT_FALSE(a.exact);
  EXPECT_LE(a.value, exact);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(a.partitions, 500u);
}

TEST(Phi, ConjectureScan) {
  std::vector<FiniteGroup> family;
  for (std::size_t m = 2; m <= 8; ++m) family.push_back(cyclic(m));
  const auto scan = conjecture_scan(family, 2, 3);
  EXPECT_EQ(scan.size(), 13u);  // cyclic:2 stops at n = 2
  for (const auto& e : scan) EXPECT_TRUE(e.within_bound) << e.group << " n=" << e.n;
  EXPECT_EQ(scan.front().phi.value, 2u);
  EXPECT_THROW(conjecture_scan(family, 3, 2), std::invalid_argument);
}

TEST(Structure, ConjugationClosure) {
  const auto s3 = symmetric(3);
  const auto full = GroupSubset::full(s3);
  const auto id = GroupSubset::of(s3, {0});
  const Element t12 = static_cast<Element>(std::find(s3.labels().begin(), s3.labels().end(), "(12)") - s3.labels().begin());
  const auto a = GroupSubset::of(s3, {t12});
  const auto cl = conjugation_closure(a, full, Conjugation::left);
  EXPECT_EQ(cl.size(), 3u);
  for (Element x : cl.elements()) EXPECT_EQ(s3.element_order(x), 2u);
  EXPECT_EQ(conjugation_closure(a, full, Conjugation::right), cl);
  EXPECT_EQ(conjugation_closure(a, id), a);
  for (const auto& h : all_subgroups(s3))
    if (h.size() == 3) {
      EXPECT_EQ(conjugation_closure(h, full, Conjugation::right), h);
    }
  EXPECT_THROW(conjugation_closure(a, GroupSubset(s3)), std::invalid_argument);
  // The two directions differ for some E.
  bool differs = false;
  for (Element x = 0; x < 6; ++x)
    for (Element y = 0; y < 6; ++y) {
      const auto e = GroupSubset::of(s3, {x});
      const auto b = GroupSubset::of(s3, {y});
      differs |= conjugation_closure(b, e, Conjugation::left) != conjugation_closure(b, e, Conjugation::right);
    }
  EXPECT_TRUE(differs);
}

TEST(Structure, SubgroupPowerCheck) {
  const auto s3 = symmetric(3);
  for (const auto& h : all_subgroups(s3)) {
    const auto r = subgroup_power_check(h);
    EXPECT_EQ(r.power_set, h);
    EXPECT_TRUE(r.is_subgroup);
    EXPECT_EQ(*r.index, 6 / h.size());
  }
  auto find = [&](const char* l) {
    return static_cast<Element>(std::find(s3.labels().begin(), s3.labels().end(), l) - s3.labels().begin());
  };
  const auto a = GroupSubset::of(s3, {find("(12)"), find("(13)")});
  const auto r = subgroup_power_check(a);
  EXPECT_TRUE(r.is_subgroup);
  EXPECT_EQ(r.cov, brute_cov_value(s3, to_mask(a)));
  const auto e = subgroup_power_check(GroupSubset::of(s3, {0}));
  EXPECT_EQ(e.cov, 6u);
  EXPECT_EQ(e.power_exponent, BigNat(1024));
  EXPECT_EQ(e.power_set, GroupSubset::of(s3, {0}));
  EXPECT_EQ(*e.index, 6u);
  EXPECT_THROW(subgroup_power_check(GroupSubset::of(cyclic(3), {1})), std::invalid_argument);
  EXPECT_THROW(subgroup_power_check(GroupSubset(s3)), std::invalid_argument);
}

TEST(Structure, SubgroupPowerOverSmallGroups) {
  std::size_t checked = 0;
  for (const auto& g : groups_up_to(8)) {
    for (std::uint64_t m = 1; m <= full_mask(g.order()); ++m) {
      if (mask_inverse(g, m) != m) continue;
      const auto r = subgroup_power_check(GroupSubset::from_mask(g, m));
      // Oracle: iterate the product 4^(k-1) times, capped once stable.
      std::uint64_t p = m;
      const std::uint64_t target = 1ULL << (2 * (r.cov - 1));
      for (std::uint64_t k = 1; k < target; ++k) {
        const std::uint64_t next = mask_product(g, p, m);
        if (next == p) break;
        p = next;
      }
      EXPECT_EQ(to_mask(r.power_set), p);
      EXPECT_TRUE(r.is_subgroup) << g.name();
      ++checked;
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(Structure, NeumannCheck) {
  const auto z6 = cyclic(6);
  const auto even = GroupSubset::of(z6, {0, 2, 4});
  const auto odd = GroupSubset::of(z6, {1, 3, 5});
  const auto r = neumann_check({even, odd, GroupSubset::of(z6, {0, 3})});
  EXPECT_EQ(r.index, 0u);
  EXPECT_EQ(r.cov, 2u);
  const auto full = neumann_check({GroupSubset::full(z6)});
  EXPECT_EQ(full.cov, 1u);
  const auto z4 = cyclic(4);
  const auto c = neumann_check({GroupSubset::of(z4, {0, 2}), GroupSubset::of(z4, {1, 3})});
  EXPECT_EQ(c.cov, 2u);
  EXPECT_THROW(neumann_check({GroupSubset::of(z4, {0, 1}), GroupSubset::of(z4, {2, 3})}), std::invalid_argument);
  EXPECT_THROW(neumann_check({GroupSubset::of(z4, {0, 2})}), std::invalid_argument);
  EXPECT_TRUE(is_shifted_subgroup(GroupSubset::of(z6, {1, 4})));
  EXPECT_FALSE(is_shifted_subgroup(GroupSubset::of(z6, {0, 1})));
}

TEST(Sandwich, BoundArithmetic) {
  // s = 1/2: (2 - 1/2 + 2 sqrt(1/2)) * 4 = 6 + 4 sqrt 2 ~ 11.657.
  const Rational half(1, 2);
  EXPECT_TRUE(below_single_set_bound(11, half));
  EXPECT_FALSE(below_single_set_bound(12, half));
  // s = 1: the bound equals 1 exactly.
  EXPECT_FALSE(below_single_set_bound(1, Rational(1)));
  EXPECT_TRUE(below_single_set_bound(0, Rational(1)));
  // 27 / (4 s^3) at s = 1/3 is 182.25.
  EXPECT_TRUE(below_pair_bound(182, 1, Rational(1, 3)));
  EXPECT_FALSE(below_pair_bound(183, 1, Rational(1, 3)));
  EXPECT_TRUE(below_pair_bound(45, 2, Rational(1, 3)));
  EXPECT_FALSE(below_pair_bound(46, 2, Rational(1, 3)));
  EXPECT_THROW(below_single_set_bound(1, Rational(0)), std::invalid_argument);
  // Cross-check with floating point away from ties.
  for (int num = 1; num <= 12; ++num)
    for (std::size_t f = 0; f < 200; ++f) {
      const double s = num / 12.0;
      const double bound = (2 - s + 2 * std::sqrt(1 - s)) / (s * s);
      if (std::abs(bound - static_cast<double>(f)) > 1e-9) {
        EXPECT_EQ(below_single_set_bound(f, make_rational(num, 12)), static_cast<double>(f) < bound);
      }
    }
}

TEST(Sandwich, Examples) {
  const auto z6 = cyclic(6);
  const auto p = GroupSubset::of(z6, {0, 1});
  const auto w = sandwich_cover_witness(p, Rational(1, 3));
  ASSERT_TRUE(w.a && w.b);
  EXPECT_TRUE(below_pair_bound(w.b->size(), w.a->size(), Rational(1, 3)));
  const auto d = product_set(inverse_set(p), p);
  const auto d2 = product_set(d, d);
  EXPECT_EQ(product_set(*w.b, conjugate_sandwich(*w.a, d2)), GroupSubset::full(z6));
  EXPECT_EQ(w.a->elements(), (std::vector<Element>{0}));
  ASSERT_TRUE(w.f);
  EXPECT_EQ(conjugate_sandwich(*w.f, d2).size(), 6u);

  const auto full = sandwich_cover_witness(GroupSubset::full(z6), Rational(1));
  ASSERT_TRUE(full.a && full.b);
  EXPECT_EQ(full.a->size(), 1u);
  EXPECT_EQ(full.b->size(), 1u);
  EXPECT_FALSE(full.f);  // |F| < 1 is impossible

  const auto half = sandwich_cover_witness(GroupSubset::of(z6, {0, 2, 4}), Rational(1, 2));
  ASSERT_TRUE(half.f);
  EXPECT_LE(half.f->size(), 2u);
  EXPECT_THROW(sandwich_cover_witness(GroupSubset(z6), Rational(1)), std::invalid_argument);
}

TEST(Sandwich, PairFormMatchesBruteForce) {
  // Least |A| with some B under the bound, then lex-least A, with |B| minimal.
  for (const auto& g : groups_up_to(6)) {
    const std::size_t n = g.order();
    for (std::uint64_t pm = 1; pm <= full_mask(n); ++pm) {
      const Rational s = make_rational(std::popcount(pm), static_cast<long>(n));
      const std::uint64_t d = mask_product(g, mask_inverse(g, pm), pm);
      const std::uint64_t d2 = mask_product(g, d, d);
      std::optional<std::pair<std::vector<Element>, std::size_t>> want;
      for (std::size_t k = 1; k <= n && !want; ++k)
        for (std::uint64_t am = 1; am <= full_mask(n); ++am) {
          if (static_cast<std::size_t>(std::popcount(am)) != k) continue;
          const std::uint64_t mid = mask_product(g, mask_product(g, am, d2), mask_inverse(g, am));
          const std::size_t b = brute_cov_value(g, mid);
          if (!below_pair_bound(b, k, s)) continue;
          auto el = mask_elements(am);
          if (!want || el < want->first) want = std::make_pair(el, b);
        }
      const auto w = sandwich_cover_witness(GroupSubset::from_mask(g, pm), s, {n});
      ASSERT_EQ(static_cast<bool>(w.a), static_cast<bool>(want)) << g.name() << " P=" << pm;
      if (!want) continue;
      EXPECT_EQ(w.a->elements(), want->first);
      EXPECT_EQ(w.b->size(), want->second);
    }
  }
}
