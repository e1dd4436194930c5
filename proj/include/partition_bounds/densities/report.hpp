#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "partition_bounds/densities/combinatorial.hpp"
#include "partition_bounds/densities/exact.hpp"
#include "partition_bounds/densities/heuristic.hpp"
#include "partition_bounds/groups/cover.hpp"
#include "partition_bounds/groups/structure.hpp"

namespace partition_bounds::densities {

struct ReportCheck {
  std::string name;
  bool passed = false;
};

struct DensityReport {
  GroupSubset set;
  Rational haar;
  Rational is12;
  Rational si21;
  Us12Result us12;
  Rational iss213;
  HeuristicResult sis123;
  HeuristicResult ssi231;
  /// Subadditivized is12 and Ssi231, under their order caps.
  std::optional<Rational> hat_is12;
  std::optional<Rational> hat_ssi231;
  /// cov(A) when A is a subgroup.
  std::optional<std::size_t> subgroup_index;
  std::vector<ReportCheck> checks;

  bool consistent() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

struct ReportOptions {
  Effort effort;
  /// Heuristic tolerance against the Haar value.
  double tolerance = 1e-6;
  std::size_t hat_is12_cap = kSubadditiveCap;
  /// Subadditivizing Ssi231 runs the ascent on 2^N sets.
  std::size_t hat_ssi231_cap = 6;
};

/// Every density of A with the identities they must satisfy on a finite
/// group recorded as named checks.
inline DensityReport density_chain_report(const GroupSubset& a, const ReportOptions& opts = {}) {
  const FiniteGroup& g = a.group();
  const std::size_t n = g.order();
  DensityReport r{a,
                  make_rational(static_cast<long>(a.size()), static_cast<long>(n)),
                  is12(a).value,
                  si21(a).value,
                  us12(a, kUs12ExhaustiveCap, n > kUs12ExhaustiveCap ? std::optional<std::size_t>(4) : std::nullopt),
                  iss213(a).value,
                  sis123(a, opts.effort),
                  ssi231(a, opts.effort),
                  std::nullopt,
                  std::nullopt,
                  std::nullopt,
                  {}};
  if (n <= opts.hat_is12_cap)
    r.hat_is12 = subadditivization([](const GroupSubset& s) { return is12(s).value; }, a, opts.hat_is12_cap).value;
  if (n <= opts.hat_ssi231_cap) {
    r.hat_ssi231 = subadditivization([&](const GroupSubset& s) { return ssi231(s, opts.effort).lower; }, a,
                                     opts.hat_ssi231_cap)
                       .value;
  }
  if (!a.empty() && groups::is_subgroup(a)) r.subgroup_index = groups::covering_number(a).value;

  auto check = [&](std::string name, bool ok) { r.checks.push_back({std::move(name), ok}); };
  auto near = [&](const Rational& v) { return std::abs(v.get_d() - r.haar.get_d()) <= opts.tolerance; };
  check("si21 = is12", r.si21 == r.is12);
  check("is12 = haar", r.is12 == r.haar);
  if (r.us12.exact) check("us12 = haar", r.us12.value == r.haar);
  check("iss213 = haar", r.iss213 == r.haar);
  check("is12 <= iss213", r.is12 <= r.iss213);
  check("sis123 lower <= iss213", r.sis123.lower <= r.iss213);
  check("ssi231 lower <= iss213", r.ssi231.lower <= r.iss213);
  check("sis123 near haar", near(r.sis123.lower));
  check("ssi231 near haar", near(r.ssi231.lower));
  if (r.hat_is12) check("hat is12 = is12", *r.hat_is12 == r.is12);
  if (r.hat_ssi231) check("hat ssi231 near haar", near(*r.hat_ssi231));
  if (r.subgroup_index) check("is12 * index = 1", r.is12 * static_cast<long>(*r.subgroup_index) == 1);
  return r;
}

}  // namespace partition_bounds::densities
