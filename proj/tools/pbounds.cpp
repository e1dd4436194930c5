// Command-line front end for the partition_bounds library.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "partition_bounds/bounds.hpp"
#include "partition_bounds/densities/combinatorial.hpp"
#include "partition_bounds/densities/exact.hpp"
#include "partition_bounds/densities/heuristic.hpp"
#include "partition_bounds/densities/report.hpp"
#include "partition_bounds/groups/catalog.hpp"
#include "partition_bounds/groups/cover.hpp"
#include "partition_bounds/groups/phi.hpp"
#include "partition_bounds/groups/sandwich.hpp"
#include "partition_bounds/groups/structure.hpp"
#include "partition_bounds/groups/thick.hpp"
#include "partition_bounds/hbar/checkpoint.hpp"
#include "partition_bounds/hbar/search.hpp"
#include "partition_bounds/numeric.hpp"
#include "partition_bounds/version.hpp"

namespace pb = partition_bounds;
namespace grp = partition_bounds::groups;
namespace den = partition_bounds::densities;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitPartial = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Report {
  json result = json::object();
  std::ostringstream text;
  std::string csv;
  int exit_code = kExitOk;
};

std::string rational_str(const pb::Rational& q) { return pb::to_string(q); }

// ---- set literals -----------------------------------------------------------

/// A bitstring of length |G| over {0,1}, or a comma list of element indices;
/// "" and "{}" denote the empty set.
grp::GroupSubset parse_set(const grp::FiniteGroup& g, const std::string& text) {
  if (text.empty() || text == "{}") return grp::GroupSubset(g);
  if (text.size() == g.order() && text.find_first_not_of("01") == std::string::npos)
    return grp::GroupSubset::from_bitstring(g, text);
  std::string body = text;
  if (body.front() == '{' && body.back() == '}') body = body.substr(1, body.size() - 2);
  grp::GroupSubset s(g);
  std::stringstream in(body);
  for (std::string tok; std::getline(in, tok, ',');) {
    const auto b = tok.find_first_not_of(' '), e = tok.find_last_not_of(' ');
    if (b == std::string::npos) throw UsageError("malformed set literal '" + text + "'");
    tok = tok.substr(b, e - b + 1);
    if (tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
      throw UsageError("malformed set literal '" + text + "': expected a bitstring of length " +
                       std::to_string(g.order()) + " or a comma list of indices");
    const auto x = std::stoul(tok);
    if (x >= g.order()) throw UsageError("set literal '" + text + "': element " + tok + " out of range");
    s.insert(static_cast<grp::Element>(x));
  }
  return s;
}

std::vector<grp::Element> parse_sequence(const grp::FiniteGroup& g, const std::string& text) {
  std::vector<grp::Element> out;
  std::stringstream in(text);
  for (std::string tok; std::getline(in, tok, ',');) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
      throw UsageError("malformed sequence '" + text + "'");
    const auto x = std::stoul(tok);
    if (x >= g.order()) throw UsageError("sequence '" + text + "': element " + tok + " out of range");
    out.push_back(static_cast<grp::Element>(x));
  }
  if (out.empty()) throw UsageError("sequence must be nonempty");
  return out;
}

json subset_json(const grp::GroupSubset& s) {
  return {{"bitstring", s.to_bitstring()}, {"elements", s.elements()}};
}

std::string subset_text(const grp::GroupSubset& s) {
  std::string out = "{";
  for (auto x : s.elements()) out += (out.size() > 1 ? "," : "") + std::to_string(x);
  return out + "} (" + s.to_bitstring() + ")";
}

json measure_json(const den::Measure& m) {
  json w = json::array();
  for (const auto& v : m.weights()) w.push_back(rational_str(v));
  return w;
}

grp::FiniteGroup load_group(const std::string& expr) {
  try {
    return grp::parse_group_expression(expr);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// ---- config echo ------------------------------------------------------------

json config_of(const CLI::App* sub) {
  json c = json::object();
  for (const CLI::Option* o : sub->get_options()) {
    const std::string name = o->get_single_name();
    if (name == "help") continue;
    if (o->count() > 0) {
      const auto& r = o->results();
      c[name] = r.size() == 1 ? json(r.front()) : json(r);
    } else if (!o->get_default_str().empty()) {
      c[name] = o->get_default_str();
    }
  }
  return c;
}

// ---- bounds -----------------------------------------------------------------

struct BoundsTableArgs {
  int n_max = 8;
  double hbar_budget = 0.5;
};

Report run_bounds_table(const BoundsTableArgs& a) {
  Report rep;
  const auto start = std::chrono::steady_clock::now();
  const auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                    std::chrono::duration<double>(a.hbar_budget));
  pb::bounds::HbarProvider provider;
  if (a.hbar_budget > 0) {
    provider = [&](int n) -> std::optional<pb::bounds::HbarCell> {
      pb::hbar::HbarOptions o;
      o.budget.deadline = deadline;
      if (n > static_cast<int>(pb::hbar::kMaxDimension)) return std::nullopt;
      const auto r = pb::hbar::hbar(n, o);
      if (r.status == pb::hbar::HbarStatus::exact) return pb::bounds::HbarCell{r.value, true};
      return pb::bounds::HbarCell{r.upper ? r.upper->c : r.interval_high, false};
    };
  }
  const auto rows = pb::bounds::bounds_table(a.n_max, provider);

  auto hbar_cell = [](const pb::bounds::BoundTableRow& r) -> std::string {
    if (!r.hbar_n) return "?";
    return (r.hbar_n->exact ? "" : "<=") + pb::to_string(r.hbar_n->value);
  };
  const std::vector<std::string> head = {"n", "phi(n)", "1+floor(cphi(n))", "hbar(n)", "phi(n+1)", "n!", "u(n)",
                                         "2^(2^(n-1)-1)"};
  std::vector<std::vector<std::string>> cells;
  std::ostringstream csv;
  csv << "n,phi,cont_phi_floor_plus1,hbar,hbar_exact_flag,phi_next,factorial,u,double_exp\n";
  json jrows = json::array();
  for (const auto& r : rows) {
    const std::string u = r.u_n ? pb::to_string(*r.u_n) : "";
    cells.push_back({std::to_string(r.n), pb::to_string(r.phi_n), pb::to_string(r.one_plus_floor_cont_phi),
                     hbar_cell(r), pb::to_string(r.phi_n_plus_1), pb::to_string(r.factorial), u.empty() ? "-" : u,
                     pb::to_string(r.double_exp)});
    csv << r.n << ',' << r.phi_n << ',' << r.one_plus_floor_cont_phi << ','
        << (r.hbar_n ? pb::to_string(r.hbar_n->value) : "") << ',' << (r.hbar_n ? (r.hbar_n->exact ? "1" : "0") : "")
        << ',' << r.phi_n_plus_1 << ',' << r.factorial << ',' << u << ',' << r.double_exp << '\n';
    json row = {{"n", r.n},
                {"phi", pb::to_string(r.phi_n)},
                {"cont_phi_floor_plus1", pb::to_string(r.one_plus_floor_cont_phi)},
                {"phi_next", pb::to_string(r.phi_n_plus_1)},
                {"factorial", pb::to_string(r.factorial)},
                {"double_exp", pb::to_string(r.double_exp)}};
    row["hbar"] = r.hbar_n ? json(pb::to_string(r.hbar_n->value)) : json(nullptr);
    row["hbar_exact_flag"] = r.hbar_n ? json(r.hbar_n->exact) : json(nullptr);
    row["u"] = r.u_n ? json(pb::to_string(*r.u_n)) : json(nullptr);
    jrows.push_back(row);
  }
  std::vector<std::size_t> width(head.size());
  for (std::size_t j = 0; j < head.size(); ++j) {
    width[j] = head[j].size();
    for (const auto& c : cells) width[j] = std::max(width[j], c[j].size());
  }
  auto line = [&](const std::vector<std::string>& c) {
    for (std::size_t j = 0; j < c.size(); ++j) rep.text << (j ? "  " : "") << std::setw(static_cast<int>(width[j])) << c[j];
    rep.text << '\n';
  };
  line(head);
  for (const auto& c : cells) line(c);

  std::vector<std::string> notes;
  for (const auto& r : rows)
    if (auto bad = pb::bounds::misprinted_factorial(r.n))
      notes.push_back("note: n! at n=" + std::to_string(r.n) + " is " + pb::to_string(r.factorial) +
                      "; the value " + std::to_string(*bad) + " seen in published tables is a misprint");
  if (rows.size() && rows.back().n > pb::bounds::kUSeqTableLimit)
    notes.push_back("note: u(n) is left blank beyond n=" + std::to_string(pb::bounds::kUSeqTableLimit));
  notes.push_back("note: hbar entries marked <= are certified upper bounds; '?' means not computed");
  rep.text << '\n' << csv.str() << '\n';
  for (const auto& n : notes) rep.text << n << '\n';
  rep.csv = csv.str();
  rep.result = {{"rows", jrows}, {"notes", notes}};
  return rep;
}

Report run_lambertw(double x) {
  Report rep;
  const double w = pb::bounds::lambert_w(x);
  const double residual = std::abs(w * std::exp(w) - x);
  rep.text << std::setprecision(17) << "W(" << x << ") = " << w << "\nresidual |W e^W - x| = " << residual << '\n';
  rep.result = {{"x", x}, {"w", w}, {"residual", residual}};
  if (x > std::exp(1.0)) {
    const double s = pb::bounds::lambert_w_series(x);
    rep.text << "asymptotic series = " << s << '\n';
    rep.result["series"] = s;
  }
  return rep;
}

// ---- hbar -------------------------------------------------------------------

struct HbarArgs {
  int n = 0;
  unsigned c = 0;
  std::optional<double> budget_secs;
  std::optional<std::string> checkpoint;
  std::optional<std::string> resume;
  unsigned workers = 1;
  std::optional<std::size_t> memory_mb;
  std::string order = "bisect";
  std::string reduction = "minimal";
  bool verbose = false;
};

pb::hbar::HbarOptions hbar_options(const HbarArgs& a) {
  pb::hbar::HbarOptions o;
  o.budget = a.budget_secs ? pb::hbar::Budget::seconds(*a.budget_secs, a.workers) : pb::hbar::Budget{};
  o.budget.workers = a.workers;
  // Packed vectors take 8 bytes; allow for the working copies of a round.
  if (a.memory_mb) o.budget.max_vectors = *a.memory_mb * (std::size_t{1} << 20) / 32;
  o.order = a.order == "ascending" ? pb::hbar::SearchOrder::ascending : pb::hbar::SearchOrder::bisect;
  o.reduction = a.reduction == "exact" ? pb::hbar::Reduction::exact : pb::hbar::Reduction::minimal;
  if (a.checkpoint) o.checkpoint = *a.checkpoint;
  if (a.resume) o.resume = pb::hbar::checkpoint_load(*a.resume, static_cast<std::size_t>(a.n));
  if (a.verbose) o.log = [](const std::string& m) { std::cerr << m << std::endl; };
  return o;
}

Report run_hbar_compute(const HbarArgs& a) {
  Report rep;
  const auto r = pb::hbar::hbar(a.n, hbar_options(a));
  const unsigned low = r.lower ? r.lower->c + 1 : r.interval_low + 1;
  const unsigned high = r.upper ? r.upper->c : r.interval_high;
  const std::string status = pb::hbar::to_string(r.status);
  switch (r.status) {
    case pb::hbar::HbarStatus::exact:
      rep.text << "hbar(" << r.n << ") = " << r.value << " (exact)\n";
      break;
    case pb::hbar::HbarStatus::upper_bound:
      rep.text << "hbar(" << r.n << ") <= " << r.value << " (bracket [" << low << ", " << high << "])\n";
      break;
    case pb::hbar::HbarStatus::lower_bound:
      rep.text << "hbar(" << r.n << ") >= " << r.value << " (bracket [" << low << ", " << high << "])\n";
      break;
  }
  rep.text << "  guaranteed interval (" << r.interval_low << ", " << r.interval_high << "]\n";
  json j = {{"n", r.n},          {"value", r.value},
            {"status", status},  {"bracket", {low, high}},
            {"interval", {r.interval_low, r.interval_high}}};
  if (r.upper) {
    rep.text << "  constant " << r.upper->c << " generates zero in set " << r.upper->index << " at round "
             << r.upper->round << '\n';
    j["upper_witness"] = {{"c", r.upper->c}, {"index", r.upper->index}, {"round", r.upper->round}};
  }
  if (r.lower) {
    rep.text << "  constant " << r.lower->c << " reaches a fixed point after " << r.lower->rounds << " rounds ("
             << r.lower->vectors << " vectors)\n";
    j["lower_attestation"] = {{"c", r.lower->c}, {"rounds", r.lower->rounds}, {"vectors", r.lower->vectors}};
  }
  json probes = json::array();
  for (const auto& p : r.probes) {
    rep.text << "  probe c=" << p.c << ": " << pb::hbar::to_string(p.outcome) << ", " << p.rounds << " rounds, "
             << std::fixed << std::setprecision(3) << p.seconds << " s\n";
    probes.push_back({{"c", p.c}, {"outcome", pb::hbar::to_string(p.outcome)}, {"rounds", p.rounds}});
  }
  rep.text << std::defaultfloat;
  j["probes"] = probes;
  rep.result = j;
  rep.exit_code = r.status == pb::hbar::HbarStatus::exact ? kExitOk : kExitPartial;
  return rep;
}

Report run_hbar_check(const HbarArgs& a) {
  Report rep;
  const auto r = pb::hbar::check_constant(a.n, a.c, hbar_options(a));
  const std::string outcome = pb::hbar::to_string(r.outcome);
  json j = {{"n", a.n}, {"c", a.c}, {"outcome", outcome}, {"rounds", r.state.round}};
  switch (r.outcome) {
    case pb::hbar::Outcome::generated_zero:
      rep.text << "constant " << a.c << " is 0-generating for n=" << a.n << ": zero in set " << *r.zero_index
               << " at round " << r.zero_round << '\n';
      j["zero_generating"] = true;
      j["zero_index"] = *r.zero_index;
      j["zero_round"] = r.zero_round;
      break;
    case pb::hbar::Outcome::fixed_point:
      rep.text << "constant " << a.c << " is not 0-generating for n=" << a.n << ": fixed point after "
               << r.state.round << " rounds\n";
      j["zero_generating"] = false;
      j["vectors"] = r.state.total_vectors();
      break;
    case pb::hbar::Outcome::budget_exhausted:
      rep.text << "constant " << a.c << " for n=" << a.n << ": undecided within budget after " << r.state.round
               << " rounds\n";
      j["zero_generating"] = nullptr;
      rep.exit_code = kExitPartial;
      break;
  }
  rep.result = j;
  return rep;
}

// ---- group ------------------------------------------------------------------

struct GroupArgs {
  std::string group;
  std::string set;
  std::vector<std::string> cells;
  std::vector<std::string> groups;
  std::size_t n = 2;
  std::size_t m = 2;
  std::optional<std::size_t> witness_cap;
  std::size_t n_min = 2;
  std::size_t n_max = 3;
  std::size_t max_order = 8;
  std::string mode = "exhaustive";
  std::uint64_t samples = 20000;
  std::optional<double> budget_secs;
  std::size_t max_size = 8;
  bool greedy = false;
};

Report run_group_verify(const GroupArgs& a) {
  Report rep;
  const auto g = load_group(a.group);
  std::vector<std::size_t> orders;
  for (grp::Element x = 0; x < g.order(); ++x) orders.push_back(g.element_order(x));
  rep.text << "valid group '" << g.name() << "' of order " << g.order() << ", identity " << g.identity() << ", "
           << (g.is_abelian() ? "abelian" : "non-abelian") << '\n';
  rep.result = {{"name", g.name()},
                {"order", g.order()},
                {"identity", g.identity()},
                {"abelian", g.is_abelian()},
                {"element_orders", orders}};
  return rep;
}

Report run_group_cov(const GroupArgs& a) {
  Report rep;
  const auto g = load_group(a.group);
  const auto s = parse_set(g, a.set);
  const auto r = grp::covering_number(s, a.greedy ? grp::CoverMode::greedy : grp::CoverMode::exact);
  rep.text << "cov = " << r.value << (r.exact ? "" : " (greedy upper bound)") << "\nwitness F = "
           << subset_text(r.witness) << '\n';
  rep.result = {{"set", subset_json(s)}, {"cov", r.value}, {"exact", r.exact}, {"witness", subset_json(r.witness)}};
  if (!r.exact) rep.exit_code = kExitPartial;
  return rep;
}

Report run_group_pack(const GroupArgs& a) {
  Report rep;
  const auto g = load_group(a.group);
  const auto s = parse_set(g, a.set);
  const auto r = grp::packing_index(s);
  rep.text << "pack = " << r.value << "\nwitness E = " << subset_text(r.witness) << '\n';
  rep.result = {{"set", subset_json(s)}, {"pack", r.value}, {"witness", subset_json(r.witness)}};
  return rep;
}

grp::PhiOptions phi_options(const GroupArgs& a, std::uint64_t seed) {
  grp::PhiOptions o;
  o.mode = a.mode == "random" ? grp::PhiMode::random : grp::PhiMode::exhaustive;
  o.seed = seed;
  o.samples = a.samples;
  o.seconds = a.budget_secs;
  return o;
}

json partition_json(const grp::FiniteGroup& g, const std::vector<std::size_t>& rgs) {
  json cells = json::array();
  for (const auto& c : grp::partition_cells(g, rgs)) cells.push_back(c.to_bitstring());
  return cells;
}

Report run_group_phig(const GroupArgs& a, std::uint64_t seed) {
  Report rep;
  const auto g = load_group(a.group);
  const auto r = grp::phi_g(g, a.n, phi_options(a, seed));
  rep.text << "Phi = " << r.value << (r.exact ? "" : " (sampled lower bound)") << '\n';
  rep.text << "witness partition:";
  for (const auto& c : grp::partition_cells(g, r.witness)) rep.text << ' ' << c.to_bitstring();
  rep.text << "\npartitions examined: " << r.partitions << '\n';
  rep.result = {{"n", a.n},
                {"phi", r.value},
                {"exact", r.exact},
                {"witness", partition_json(g, r.witness)},
                {"partitions", r.partitions}};
  if (!r.exact) rep.exit_code = kExitPartial;
  return rep;
}

Report run_group_thick(const GroupArgs& a) {
  Report rep;
  const auto g = load_group(a.group);
  const auto s = parse_set(g, a.set);
  const bool thick = grp::is_m_thick(s, a.m);
  rep.text << "A is " << (thick ? "" : "not ") << a.m << "-thick\n";
  rep.result = {{"set", subset_json(s)}, {"m", a.m}, {"thick", thick}};
  if (a.witness_cap) {
    const auto f = grp::thick_shift_witness(s, a.m, *a.witness_cap);
    if (f) {
      rep.text << "F = " << subset_text(*f) << " makes FA " << a.m << "-thick\n";
      rep.result["shift_witness"] = subset_json(*f);
    } else {
      rep.text << "no F with |F| <= " << *a.witness_cap << " makes FA " << a.m << "-thick\n";
      rep.result["shift_witness"] = nullptr;
    }
  }
  return rep;
}

Report run_group_powercheck(const GroupArgs& a) {
  Report rep;
  const auto g = load_group(a.group);
  const auto s = parse_set(g, a.set);
  const auto r = grp::subgroup_power_check(s);
  rep.text << "cov(A) = " << r.cov << ", exponent 4^(k-1) = " << pb::to_string(r.power_exponent) << "\npower = "
           << subset_text(r.power_set) << "\nsubgroup: " << (r.is_subgroup ? "yes" : "no");
  if (r.index) rep.text << ", index " << *r.index;
  rep.text << '\n';
  rep.result = {{"set", subset_json(s)},
                {"symmetric", r.is_symmetric},
                {"cov", r.cov},
                {"power_exponent", pb::to_string(r.power_exponent)},
                {"power_set", subset_json(r.power_set)},
                {"is_subgroup", r.is_subgroup},
                {"index", r.index ? json(*r.index) : json(nullptr)}};
  if (!r.is_subgroup) rep.exit_code = kExitError;
  return rep;
}

Report run_group_neumann(const GroupArgs& a) {
  Report rep;
  const auto g = load_group(a.group);
  std::vector<grp::GroupSubset> cells;
  for (const auto& c : a.cells) cells.push_back(parse_set(g, c));
  const auto r = grp::neumann_check(cells);
  rep.text << "cell " << r.index << " " << subset_text(cells[r.index]) << " has cov " << r.cov
           << " <= " << cells.size() << '\n';
  rep.result = {{"index", r.index}, {"cell", subset_json(cells[r.index])}, {"cov", r.cov}, {"cells", cells.size()}};
  return rep;
}

Report run_group_scan(const GroupArgs& a, std::uint64_t seed) {
  Report rep;
  std::vector<grp::FiniteGroup> family;
  if (!a.groups.empty()) {
    for (const auto& e : a.groups) family.push_back(load_group(e));
  } else {
    family = grp::small_groups(a.max_order);
  }
  const auto scan = grp::conjecture_scan(family, a.n_min, a.n_max, phi_options(a, seed));
  json entries = json::array();
  bool all_exact = true, all_within = true;
  for (const auto& e : scan) {
    rep.text << e.group << " n=" << e.n << " Phi=" << e.phi.value << (e.phi.exact ? "" : " (sampled)")
             << (e.within_bound ? " <= n" : " > n  VIOLATION") << '\n';
    entries.push_back({{"group", e.group},
                       {"order", e.order},
                       {"n", e.n},
                       {"phi", e.phi.value},
                       {"exact", e.phi.exact},
                       {"within_bound", e.within_bound}});
    all_exact &= e.phi.exact;
    all_within &= e.within_bound;
  }
  rep.text << (all_within ? "all entries satisfy Phi <= n\n" : "some entry violates Phi <= n\n");
  rep.result = {{"entries", entries}, {"all_within_bound", all_within}};
  rep.exit_code = !all_within ? kExitError : all_exact ? kExitOk : kExitPartial;
  return rep;
}

Report run_group_sandwich(const GroupArgs& a) {
  Report rep;
  const auto g = load_group(a.group);
  const auto p = parse_set(g, a.set);
  if (p.empty()) throw UsageError("sandwich: P must be nonempty");
  const pb::Rational s = pb::make_rational(static_cast<long>(p.size()), static_cast<long>(g.order()));
  const auto w = grp::sandwich_cover_witness(p, s, {a.max_size});
  rep.text << "s = |P|/|G| = " << rational_str(s) << '\n';
  json j = {{"set", subset_json(p)}, {"s", rational_str(s)}};
  if (w.a) {
    rep.text << "pair form: A = " << subset_text(*w.a) << ", B = " << subset_text(*w.b) << ", |B||A|^2 = "
             << w.b->size() * w.a->size() * w.a->size() << " < 27/(4s^3)\n";
    j["pair"] = {{"a", subset_json(*w.a)}, {"b", subset_json(*w.b)}};
  } else {
    rep.text << "pair form: no witness within |A| <= " << a.max_size << '\n';
    j["pair"] = nullptr;
  }
  if (w.f) {
    rep.text << "single form: F = " << subset_text(*w.f) << '\n';
    j["single"] = subset_json(*w.f);
  } else {
    rep.text << "single form: no F within the size bound\n";
    j["single"] = nullptr;
  }
  rep.result = j;
  if (!w.a || !w.f) rep.exit_code = kExitPartial;
  return rep;
}

// ---- density ----------------------------------------------------------------

struct DensityArgs {
  std::string group;
  std::string set;
  std::size_t effort = 16;
  std::size_t iterations = 500;
  double tolerance = 1e-6;
  std::string seq;
  std::size_t m_max = 4;
};

json heuristic_json(const den::HeuristicResult& h) {
  json w = json::array();
  for (const auto& m : h.witness) w.push_back(measure_json(m));
  return {{"estimate", h.estimate},
          {"lower", rational_str(h.lower)},
          {"upper", rational_str(h.upper)},
          {"best_restart", h.best_restart},
          {"witness", w}};
}

Report run_density_report(const DensityArgs& a, std::uint64_t seed) {
  Report rep;
  const auto g = load_group(a.group);
  const auto s = parse_set(g, a.set);
  den::ReportOptions o;
  o.effort.restarts = a.effort;
  o.effort.iterations = a.iterations;
  o.effort.seed = seed;
  o.tolerance = a.tolerance;
  const auto r = den::density_chain_report(s, o);
  rep.text << "A = " << subset_text(s) << " in " << g.name() << '\n'
           << "haar    = " << rational_str(r.haar) << '\n'
           << "is12    = " << rational_str(r.is12) << '\n'
           << "si21    = " << rational_str(r.si21) << '\n'
           << "us12    = " << rational_str(r.us12.value) << (r.us12.exact ? "" : " (upper bound)") << '\n'
           << "iss213  = " << rational_str(r.iss213) << '\n'
           << "sis123  in [" << rational_str(r.sis123.lower) << ", " << rational_str(r.sis123.upper) << "]\n"
           << "ssi231  in [" << rational_str(r.ssi231.lower) << ", " << rational_str(r.ssi231.upper) << "]\n";
  if (r.hat_is12) rep.text << "hat is12   = " << rational_str(*r.hat_is12) << '\n';
  if (r.hat_ssi231) rep.text << "hat ssi231 >= " << rational_str(*r.hat_ssi231) << '\n';
  if (r.subgroup_index) rep.text << "subgroup of index " << *r.subgroup_index << '\n';
  json checks = json::array();
  bool exact_ok = true, heuristic_ok = true;
  for (const auto& c : r.checks) {
    rep.text << "check " << c.name << ": " << (c.passed ? "ok" : "FAILED") << '\n';
    checks.push_back({{"name", c.name}, {"passed", c.passed}});
    const bool heuristic = c.name.find("near haar") != std::string::npos;
    (heuristic ? heuristic_ok : exact_ok) &= c.passed;
  }
  rep.result = {{"set", subset_json(s)},
                {"haar", rational_str(r.haar)},
                {"is12", rational_str(r.is12)},
                {"si21", rational_str(r.si21)},
                {"us12", {{"value", rational_str(r.us12.value)}, {"exact", r.us12.exact}, {"witness", subset_json(r.us12.witness)}}},
                {"iss213", rational_str(r.iss213)},
                {"sis123", heuristic_json(r.sis123)},
                {"ssi231", heuristic_json(r.ssi231)},
                {"hat_is12", r.hat_is12 ? json(rational_str(*r.hat_is12)) : json(nullptr)},
                {"hat_ssi231", r.hat_ssi231 ? json(rational_str(*r.hat_ssi231)) : json(nullptr)},
                {"subgroup_index", r.subgroup_index ? json(*r.subgroup_index) : json(nullptr)},
                {"checks", checks}};
  rep.exit_code = !exact_ok ? kExitError : !heuristic_ok ? kExitPartial : kExitOk;
  return rep;
}

Report run_density_ipstar(const DensityArgs& a) {
  Report rep;
  const auto g = load_group(a.group);
  const auto s = parse_set(g, a.set);
  const auto seq = parse_sequence(g, a.seq);
  const auto w = den::ipstar_window_check(s, seq);
  if (w) {
    rep.text << "window (k, m) = (" << w->first << ", " << w->second << "): x_" << w->first + 1 << " ... x_"
             << w->second << " lies in AA^-1\n";
    rep.result = {{"found", true}, {"k", w->first}, {"m", w->second}};
  } else {
    rep.text << "no window: no consecutive product lies in AA^-1\n";
    rep.result = {{"found", false}};
  }
  rep.result["set"] = subset_json(s);
  rep.result["sequence"] = seq;
  return rep;
}

Report run_density_kelley(const DensityArgs& a) {
  Report rep;
  const auto g = load_group(a.group);
  const auto s = parse_set(g, a.set);
  const auto r = den::kelley_intersection(s, a.m_max);
  json per = json::array();
  for (std::size_t m = 0; m < r.per_m.size(); ++m) {
    rep.text << "m=" << m + 1 << ": " << rational_str(r.per_m[m]) << '\n';
    per.push_back(rational_str(r.per_m[m]));
  }
  rep.text << "intersection number over m <= " << a.m_max << ": " << rational_str(r.value) << '\n';
  rep.result = {{"set", subset_json(s)}, {"value", rational_str(r.value)}, {"per_m", per}, {"tuple", r.tuple}};
  return rep;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PARTITION_BOUNDS_SEED")) {
    const std::string s = env;
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 19)
      throw UsageError("PARTITION_BOUNDS_SEED must be a non-negative integer");
    return std::stoull(s);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and heuristic evaluation of partition bounds on finite structures", "pbounds"};
  app.fallthrough();
  app.set_version_flag("--version", pb::kVersion);
  std::string format = "text";
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}))->capture_default_str();
  app.add_option("--seed", seed_flag, "Random seed (default 0, or PARTITION_BOUNDS_SEED)");
  app.require_subcommand(1);

  std::vector<std::pair<CLI::App*, std::function<Report(std::uint64_t)>>> leaves;

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Closed-form bound functions");
  bounds->require_subcommand(1);
  BoundsTableArgs ta;
  auto* table = bounds->add_subcommand("table", "Comparison table of the bound sequences");
  table->add_option("--n-max", ta.n_max, "Last row")->check(CLI::Range(2, 40))->capture_default_str();
  table->add_option("--hbar-budget", ta.hbar_budget, "Seconds for computing hbar entries (0 skips them)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  leaves.emplace_back(table, [&](std::uint64_t) { return run_bounds_table(ta); });
  double lw_x = 0;
  auto* lw = bounds->add_subcommand("lambertw", "Principal branch of the Lambert W function");
  lw->add_option("--x", lw_x, "Argument (at least -1/e)")->required();
  leaves.emplace_back(lw, [&](std::uint64_t) { return run_lambertw(lw_x); });

  // hbar
  auto* hbar = app.add_subcommand("hbar", "The hbar(n) search");
  hbar->require_subcommand(1);
  HbarArgs ha;
  auto add_hbar_common = [&](CLI::App* s) {
    s->add_option("--n", ha.n, "Dimension")->required()->check(CLI::Range(2, 8));
    s->add_option("--budget-secs", ha.budget_secs, "Wall-clock budget in seconds")->check(CLI::PositiveNumber);
    s->add_option("--checkpoint", ha.checkpoint, "Write a checkpoint here at every round boundary");
    s->add_option("--resume", ha.resume, "Resume from this checkpoint")->check(CLI::ExistingFile);
    s->add_option("--workers", ha.workers, "Worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
    s->add_option("--memory-mb", ha.memory_mb, "Memory cap in MB")->check(CLI::PositiveNumber);
    s->add_option("--reduction", ha.reduction, "Set representation")
        ->check(CLI::IsMember({"minimal", "exact"}))
        ->capture_default_str();
    s->add_flag("--verbose", ha.verbose, "Log each probe to stderr");
  };
  auto* compute = hbar->add_subcommand("compute", "Compute or bracket hbar(n)");
  add_hbar_common(compute);
  compute->add_option("--order", ha.order, "Probe order")
      ->check(CLI::IsMember({"bisect", "ascending"}))
      ->capture_default_str();
  leaves.emplace_back(compute, [&](std::uint64_t) { return run_hbar_compute(ha); });
  auto* check = hbar->add_subcommand("check", "Decide whether the constant bound c is 0-generating");
  add_hbar_common(check);
  check->add_option("--c", ha.c, "Constant bound")->required()->check(CLI::Range(0u, 127u));
  leaves.emplace_back(check, [&](std::uint64_t) { return run_hbar_check(ha); });

  // group
  auto* group = app.add_subcommand("group", "Finite-group computations");
  group->require_subcommand(1);
  GroupArgs ga;
  auto group_opt = [&](CLI::App* s) {
    return s->add_option("--group", ga.group, "Group spec file or expression (cyclic:6, sym:4, product:cyclic:2,sym:3)")
        ->required();
  };
  auto set_opt = [&](CLI::App* s, const char* what) {
    return s->add_option("--set", ga.set, what)->required();
  };
  auto* verify = group->add_subcommand("verify", "Validate a group and print its basic data");
  group_opt(verify);
  leaves.emplace_back(verify, [&](std::uint64_t) { return run_group_verify(ga); });
  auto* cov = group->add_subcommand("cov", "Covering number cov(A)");
  group_opt(cov);
  set_opt(cov, "A as a bitstring or comma list");
  cov->add_flag("--greedy", ga.greedy, "Greedy upper bound instead of the exact value");
  leaves.emplace_back(cov, [&](std::uint64_t) { return run_group_cov(ga); });
  auto* pack = group->add_subcommand("pack", "Packing index pack(A)");
  group_opt(pack);
  set_opt(pack, "A as a bitstring or comma list");
  leaves.emplace_back(pack, [&](std::uint64_t) { return run_group_pack(ga); });
  auto add_phi_opts = [&](CLI::App* s) {
    s->add_option("--mode", ga.mode, "Partition enumeration")
        ->check(CLI::IsMember({"exhaustive", "random"}))
        ->capture_default_str();
    s->add_option("--samples", ga.samples, "Random-mode sample count")->capture_default_str();
    s->add_option("--budget-secs", ga.budget_secs, "Random-mode time budget")->check(CLI::PositiveNumber);
  };
  auto* phig = group->add_subcommand("phig", "Phi_G(n) over partitions into at most n cells");
  group_opt(phig);
  phig->add_option("--n", ga.n, "Number of cells")->required()->check(CLI::PositiveNumber);
  add_phi_opts(phig);
  leaves.emplace_back(phig, [&](std::uint64_t seed) { return run_group_phig(ga, seed); });
  auto* thick = group->add_subcommand("thick", "m-thickness and shift witnesses");
  group_opt(thick);
  set_opt(thick, "A as a bitstring or comma list");
  thick->add_option("--m", ga.m, "Thickness parameter")->required()->check(CLI::PositiveNumber);
  thick->add_option("--witness-cap", ga.witness_cap, "Also search F with |F| <= cap making FA m-thick");
  leaves.emplace_back(thick, [&](std::uint64_t) { return run_group_thick(ga); });
  auto* power = group->add_subcommand("powercheck", "Subgroup test for A^(4^(cov(A)-1))");
  group_opt(power);
  set_opt(power, "Symmetric A as a bitstring or comma list");
  leaves.emplace_back(power, [&](std::uint64_t) { return run_group_powercheck(ga); });
  auto* neumann = group->add_subcommand("neumann", "Cover by shifted subgroups: find a cell with cov <= n");
  group_opt(neumann);
  neumann->add_option("--cell", ga.cells, "A cell (repeat for each)")->required();
  leaves.emplace_back(neumann, [&](std::uint64_t) { return run_group_neumann(ga); });
  auto* scan = group->add_subcommand("scan", "Phi_G(n) <= n over a family of groups");
  auto* scan_groups = scan->add_option("--group", ga.groups, "Group (repeatable)");
  scan->add_option("--max-order", ga.max_order, "Use the catalog of groups up to this order")
      ->check(CLI::Range(1, 12))
      ->capture_default_str()
      ->excludes(scan_groups);
  scan->add_option("--n-min", ga.n_min, "First n")->check(CLI::PositiveNumber)->capture_default_str();
  scan->add_option("--n-max", ga.n_max, "Last n")->check(CLI::PositiveNumber)->capture_default_str();
  add_phi_opts(scan);
  leaves.emplace_back(scan, [&](std::uint64_t seed) {
    if (ga.n_min > ga.n_max) throw UsageError("--n-min must not exceed --n-max");
    return run_group_scan(ga, seed);
  });
  auto* sandwich = group->add_subcommand("sandwich", "Sandwich-cover witnesses for P at density |P|/|G|");
  group_opt(sandwich);
  set_opt(sandwich, "P as a bitstring or comma list");
  sandwich->add_option("--max-size", ga.max_size, "Largest |A| or |F| tried")->capture_default_str();
  leaves.emplace_back(sandwich, [&](std::uint64_t) { return run_group_sandwich(ga); });

  // density
  auto* density = app.add_subcommand("density", "Densities of subsets of finite groups");
  density->require_subcommand(1);
  DensityArgs da;
  auto density_common = [&](CLI::App* s) {
    s->add_option("--group", da.group, "Group spec file or expression")->required();
    s->add_option("--set", da.set, "A as a bitstring or comma list")->required();
  };
  auto* report = density->add_subcommand("report", "All densities of A with consistency checks");
  density_common(report);
  report->add_option("--effort", da.effort, "Restarts of the heuristic evaluators")
      ->check(CLI::Range(std::size_t{1}, std::size_t{10000}))
      ->capture_default_str();
  report->add_option("--iterations", da.iterations, "Ascent iterations per restart")->capture_default_str();
  report->add_option("--tolerance", da.tolerance, "Heuristic tolerance against |A|/|G|")->capture_default_str();
  leaves.emplace_back(report, [&](std::uint64_t seed) { return run_density_report(da, seed); });
  auto* ipstar = density->add_subcommand("ipstar", "Find a window product in AA^-1");
  density_common(ipstar);
  ipstar->add_option("--seq", da.seq, "Comma list of elements")->required();
  leaves.emplace_back(ipstar, [&](std::uint64_t) { return run_density_ipstar(da); });
  auto* kelley = density->add_subcommand("kelley", "Kelley intersection number over tuples of translates");
  density_common(kelley);
  kelley->add_option("--m-max", da.m_max, "Longest tuple")->check(CLI::Range(std::size_t{1}, std::size_t{64}))->capture_default_str();
  leaves.emplace_back(kelley, [&](std::uint64_t) { return run_density_kelley(da); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    const std::uint64_t seed = resolve_seed(seed_flag);
    for (auto& [leaf, action] : leaves) {
      if (!leaf->parsed()) continue;
      const auto t0 = std::chrono::steady_clock::now();
      Report rep = action(seed);
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (format == "json") {
        json out = {{"schema", 1},
                    {"version", pb::kVersion},
                    {"command", leaf->get_parent()->get_name() + " " + leaf->get_name()},
                    {"config", config_of(leaf)},
                    {"seed", seed},
                    {"result", rep.result},
                    {"exit_code", rep.exit_code},
                    {"wall_clock_seconds", wall}};
        std::cout << out.dump(2) << '\n';
      } else if (format == "csv") {
        if (rep.csv.empty()) throw UsageError("csv output is only available for 'bounds table'");
        std::cout << rep.csv;
      } else {
        std::cout << rep.text.str() << "seed: " << seed << '\n';
      }
      return rep.exit_code;
    }
    throw UsageError("no command given");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for more information.\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
