// Copyright 2026 The xpcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "xpcalc/xpcalc.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace xpcalc;

constexpr std::size_t kOracleCap = 22;

struct RunConfig {
  std::string path;
  unsigned t = 0;
  std::string target;
  std::string z;
  std::string cycles;
  std::size_t distance = 0;
  std::string format = "text";
  std::uint64_t budget = 1'000'000;
  bool no_verify = false;
  std::size_t k = 0;
};

// Failure of an independent oracle check on a result the algorithms claim is correct.
struct VerifyError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  if (path.empty()) throw Error("missing input file");
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CssCode load_code(const RunConfig& cfg) { return parse_code(read_file(cfg.path)); }

unsigned require_level(const RunConfig& cfg) {
  if (cfg.t == 0) throw Error("this command needs -t/--level");
  return cfg.t;
}

bool json_out(const RunConfig& cfg) { return cfg.format == "json"; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

bool under_cap(const CssCode& c) { return c.r() + c.k() <= kOracleCap; }

oracle::CheckResult oracle_check(const CssCode& c, const oracle::PhaseFn& f) {
  return oracle::check_logical(c.SX, c.LX, c.n, f, kOracleCap);
}

void verify_action(const RunConfig& cfg, const CssCode& c, const oracle::PhaseFn& f, const DiagProduct& action,
                   const std::string& what) {
  if (cfg.no_verify || !under_cap(c)) return;
  const auto res = oracle_check(c, f);
  if (!oracle::action_matches(res, action)) throw VerifyError("oracle rejects " + what);
}

std::string report_line(const ZVec& z, std::uint64_t N, unsigned level, const std::string& action) {
  return "z=" + format_digits(z) + "  N=" + std::to_string(N) + "  level=" + std::to_string(level) +
         "  action=" + action;
}

json report_json(const ZVec& z, std::uint64_t N, unsigned level, const std::string& action) {
  return json{{"z", format_digits(z)}, {"N", N}, {"level", level}, {"action", action}};
}

// Number of logical qubits a gate string refers to: one more than its largest index.
std::size_t qubits_in(const std::string& gates) {
  std::size_t k = 0;
  bool in = false;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) k = std::max(k, static_cast<std::size_t>(std::stoul(cur)) + 1);
    cur.clear();
  };
  for (char c : gates) {
    if (c == '[') {
      in = true;
    } else if (c == ']') {
      flush();
      in = false;
    } else if (in && std::isdigit(static_cast<unsigned char>(c))) {
      cur += c;
    } else if (in) {
      flush();
    }
  }
  return k;
}

DiagProduct target_for(const RunConfig& cfg, const CssCode& code, std::uint64_t N) {
  if (cfg.target.empty()) throw Error("this command needs --target");
  return parse_gates(cfg.target, code.k(), N);
}

// ---------------------------------------------------------------------------

int cmd_identities(const RunConfig& cfg) {
  const CssCode code = load_code(cfg);
  const unsigned t = require_level(cfg);
  const auto ids = logical_identities(code, t);
  for (const auto& z : ids.K_M.rows)
    verify_action(cfg, code, oracle::phase_of_z(ids.N, z), DiagProduct(ids.N, code.k(), TermKind::CP),
                  "identity " + format_digits(z));
  if (json_out(cfg)) {
    json rows = json::array();
    for (const auto& z : ids.K_M.rows) rows.push_back(report_json(z, ids.N, clifford_level(z, ids.N), "I"));
    std::cout << json{{"N", ids.N}, {"K_M", rows}}.dump(2) << "\n";
  } else {
    for (const auto& z : ids.K_M.rows)
      std::cout << report_line(z, ids.N, clifford_level(z, ids.N), "I") << "\n";
  }
  return 0;
}

int cmd_search(const RunConfig& cfg) {
  const CssCode code = load_code(cfg);
  const unsigned t = require_level(cfg);
  const std::uint64_t N = precision(t);
  DiagProduct target = target_for(cfg, code, N);
  const std::uint64_t phase = target.phase;
  target.phase = 0;
  const auto op = search_by_action(code, t, target);
  if (!op) {
    if (json_out(cfg))
      std::cout << json{{"status", "not found"}, {"target", format_gates(target)}, {"phase", phase}}.dump(2) << "\n";
    else
      std::cout << "not found  target=" << format_gates(target) << "\n";
    return 1;
  }
  verify_action(cfg, code, oracle::phase_of_z(N, op->z), target, "search result");
  const unsigned level = clifford_level(op->z, N);
  if (json_out(cfg)) {
    json j = report_json(op->z, N, level, format_gates(target));
    j["phase"] = phase;
    std::cout << j.dump(2) << "\n";
  } else {
    if (phase) std::cout << "# global phase " << phase << " divided out of the target\n";
    std::cout << report_line(op->z, N, level, format_gates(target)) << "\n";
  }
  return 0;
}

int cmd_test(const RunConfig& cfg) {
  const CssCode code = load_code(cfg);
  const unsigned t = require_level(cfg);
  const std::uint64_t N = precision(t);
  if (cfg.z.empty()) throw Error("test needs --z <digits>");
  const ZVec z = parse_digits(cfg.z, N);
  if (z.size() != code.n)
    throw Error("--z has " + std::to_string(z.size()) + " entries, code has n=" + std::to_string(code.n));
  const auto res = test_logical(code, lower_identities(code, t), z);
  if (!cfg.no_verify && under_cap(code)) {
    const auto o = oracle_check(code, oracle::phase_of_z(N, z));
    if ((o.verdict != oracle::Verdict::NotLogical) != res.logical)
      throw VerifyError("oracle and logical test disagree on z=" + format_digits(z));
  }
  if (json_out(cfg)) {
    json steps = json::array();
    for (const auto& s : res.steps)
      steps.push_back(json{{"check", s.check},
                           {"x", bits_to_string(code.SX[s.check])},
                           {"xz", s.xz},
                           {"minus_2xz", format_digits(s.minus_2xz)},
                           {"in_span", s.in_span}});
    std::cout << json{{"z", format_digits(z)}, {"N", N}, {"steps", steps}, {"logical", res.logical}}.dump(2) << "\n";
  } else {
    for (const auto& s : res.steps)
      std::cout << "x=" << bits_to_string(code.SX[s.check]) << "  xz=" << s.xz
                << "  -2xz=" << format_digits(s.minus_2xz) << "  in_span=" << yes_no(s.in_span) << "\n";
    std::cout << "z=" << format_digits(z) << "  N=" << N << "  logical=" << yes_no(res.logical) << "\n";
  }
  return res.logical ? 0 : 1;
}

int cmd_generators(const RunConfig& cfg) {
  const CssCode code = load_code(cfg);
  const unsigned t = require_level(cfg);
  const auto g = logical_generators(code, t);
  for (const auto& r : g.rows)
    verify_action(cfg, code, oracle::phase_of_z(g.N, r.z), r.action, "generator " + format_digits(r.z));
  if (json_out(cfg)) {
    json rows = json::array();
    for (const auto& r : g.rows) {
      json j = report_json(r.z, g.N, r.level, format_gates(r.action));
      j["identity"] = r.identity;
      rows.push_back(j);
    }
    json kl = json::array();
    for (const auto& z : g.K_L.rows) kl.push_back(format_digits(z));
    std::cout << json{{"N", g.N}, {"generators", rows}, {"K_L", kl}}.dump(2) << "\n";
  } else {
    for (const auto& r : g.rows) std::cout << report_line(r.z, g.N, r.level, format_gates(r.action)) << "\n";
    std::cout << "# K_L\n";
    for (const auto& z : g.K_L.rows) std::cout << format_digits(z) << "\n";
  }
  return 0;
}

int cmd_action(const RunConfig& cfg) {
  const CssCode code = load_code(cfg);
  const unsigned t = require_level(cfg);
  const std::uint64_t N = precision(t);
  if (cfg.z.empty()) throw Error("action needs --z <digits>");
  const ZVec z = parse_digits(cfg.z, N);
  if (z.size() != code.n)
    throw Error("--z has " + std::to_string(z.size()) + " entries, code has n=" + std::to_string(code.n));
  if (!is_logical(code, t, z)) {
    if (json_out(cfg))
      std::cout << json{{"z", format_digits(z)}, {"N", N}, {"logical", false}}.dump(2) << "\n";
    else
      std::cout << "z=" << format_digits(z) << "  N=" << N << "  logical=no\n";
    return 1;
  }
  const DiagProduct a = logical_action(code, z, N);
  verify_action(cfg, code, oracle::phase_of_z(N, z), a, "action of z=" + format_digits(z));
  const unsigned level = clifford_level(z, N);
  if (json_out(cfg))
    std::cout << report_json(z, N, level, format_gates(a)).dump(2) << "\n";
  else
    std::cout << report_line(z, N, level, format_gates(a)) << "\n";
  return 0;
}

int cmd_depth_one(const RunConfig& cfg) {
  const CssCode code = load_code(cfg);
  const unsigned t = require_level(cfg);
  const std::uint64_t N = precision(t);
  std::optional<Embedding> E;
  if (!cfg.cycles.empty()) E = parse_cycles(cfg.cycles, code.n);
  DepthOneOptions opt;
  opt.budget = cfg.budget;
  if (!cfg.target.empty()) {
    DiagProduct target = target_for(cfg, code, N);
    target.phase = 0;
    const Embedding emb = E ? *E : weight_vectors(code.n, t);
    const auto op = search_by_action(embed_code(code, emb, DependentRows::Drop), t, target);
    if (!op) {
      std::cout << (json_out(cfg) ? json{{"status", "not found"}}.dump(2) : std::string("status=not found")) << "\n";
      return 1;
    }
    E = emb;
    opt.same_action = true;
    opt.start = op->z;
  }
  const auto res = depth_one_search(code, t, E, opt);
  if (res.status != SearchStatus::Found) {
    if (json_out(cfg))
      std::cout << json{{"status", to_string(res.status)}, {"states", res.states}}.dump(2) << "\n";
    else
      std::cout << "status=" << to_string(res.status) << "  states=" << res.states << "\n";
    return 1;
  }
  verify_action(cfg, code, oracle::phase_of_product(res.gates), res.action, "depth-one result");
  const unsigned level = action_level(res.action);
  if (json_out(cfg)) {
    json j{{"status", to_string(res.status)}, {"states", res.states}};
    j.update(report_json(res.z, N, level, format_gates(res.action)));
    j["gates"] = format_gates(res.gates);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "status=" << to_string(res.status) << "  states=" << res.states << "\n";
    std::cout << report_line(res.z, N, level, format_gates(res.action)) << "\n";
    std::cout << "gates=" << format_gates(res.gates) << "\n";
  }
  return 0;
}

int cmd_canonical(const RunConfig& cfg) {
  const CssCode code = load_code(cfg);
  const unsigned t = require_level(cfg);
  const std::uint64_t N = precision(t);
  const DiagProduct target = target_for(cfg, code, N);
  const auto c = canonical_cp_op(code, target, t);
  verify_action(cfg, code, oracle::phase_of_product(c.cp_terms), target, "canonical implementation");
  if (json_out(cfg)) {
    std::cout << json{{"target", format_gates(target)},
                      {"N", N},
                      {"rp", format_gates(c.rp_terms)},
                      {"cp", format_gates(c.cp_terms)},
                      {"max_support", c.max_support}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "target=" << format_gates(target) << "  N=" << N << "  max_support=" << c.max_support << "\n";
    std::cout << "rp=" << format_gates(c.rp_terms) << "\n";
    std::cout << "cp=" << format_gates(c.cp_terms) << "\n";
  }
  return 0;
}

std::string distance_text(const DistanceResult& d) {
  return d.value ? std::to_string(*d.value) : ">=" + std::to_string(d.lower_bound);
}

json distance_json(const DistanceResult& d) { return d.value ? json(*d.value) : json(nullptr); }

int cmd_construct(const RunConfig& cfg) {
  if (cfg.target.empty()) throw Error("construct needs --target");
  if (cfg.distance < 2) throw Error("construct needs -d/--distance of at least 2");
  const std::size_t k = cfg.k ? cfg.k : qubits_in(cfg.target);
  if (k == 0) throw Error("cannot tell the number of logical qubits from the target; pass --k");
  std::uint64_t N = 0;
  if (cfg.t) {
    N = precision(cfg.t);
  } else {
    const std::uint64_t fine = required_precision(cfg.target, k);
    N = precision(std::max(1u, action_level(parse_gates(cfg.target, k, fine))));
  }
  const DiagProduct target = parse_gates(cfg.target, k, N);
  const auto cc = construct_code(target, cfg.distance);
  verify_action(cfg, cc.code, oracle::phase_of_z(N, cc.exponents), cc.target, "constructed gate assignment");
  const auto dist = code_distances(cc.code);
  if (json_out(cfg)) {
    json sx = json::array(), lx = json::array(), pg = json::array();
    for (const auto& r : cc.code.SX) sx.push_back(bits_to_string(r));
    for (const auto& r : cc.code.LX) lx.push_back(bits_to_string(r));
    for (std::size_t j = 0; j < cc.exponents.size(); ++j)
      if (cc.exponents[j]) pg.push_back(json{{"qubit", j}, {"exponent", cc.exponents[j]}});
    std::cout << json{{"target", format_gates(cc.target)},
                      {"phase", cc.phase},
                      {"N", N},
                      {"d", cfg.distance},
                      {"n", cc.code.n},
                      {"dX", distance_json(dist.dX)},
                      {"dZ", distance_json(dist.dZ)},
                      {"SX", sx},
                      {"LX", lx},
                      {"PGATES", pg}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "# target=" << format_gates(cc.target) << "  N=" << N << "  d=" << cfg.distance << "\n";
    if (cc.phase) std::cout << "# global phase " << cc.phase << " divided out of the target\n";
    std::cout << "# n=" << cc.code.n << "  dX=" << distance_text(dist.dX) << "  dZ=" << distance_text(dist.dZ)
              << "\n";
    std::cout << serialize_code(cc.code);
    std::cout << "PGATES\n";
    for (std::size_t j = 0; j < cc.exponents.size(); ++j)
      if (cc.exponents[j]) std::cout << j << ":" << cc.exponents[j] << "\n";
  }
  return 0;
}

int cmd_noncss(const RunConfig& cfg) {
  const PauliStabCode stab = parse_stabilizers(read_file(cfg.path));
  const CssReduction red = map_to_css(stab);
  const bool ok = verify_reduction(red);
  if (!cfg.no_verify && !ok) throw VerifyError("D X^q |v> is not stabilised by the input generators");
  const auto d_orig = pauli_distance(stab);
  const auto d_css = code_distances(red.css);
  std::optional<std::size_t> d_red;
  if (d_css.dX.value && d_css.dZ.value) d_red = std::min(*d_css.dX.value, *d_css.dZ.value);
  auto dj = [](const std::optional<std::size_t>& d) { return d ? json(*d) : json(nullptr); };
  auto dt = [](const std::optional<std::size_t>& d) { return d ? std::to_string(*d) : std::string("unknown"); };
  if (json_out(cfg)) {
    json sx = json::array(), lx = json::array();
    for (const auto& r : red.css.SX) sx.push_back(bits_to_string(r));
    for (const auto& r : red.css.LX) lx.push_back(bits_to_string(r));
    std::cout << json{{"q", bits_to_string(red.q)}, {"D", format_gates(red.D)}, {"verified", ok},
                      {"distance", dj(d_orig)}, {"css_distance", dj(d_red)}, {"SX", sx}, {"LX", lx}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "q=" << bits_to_string(red.q) << "\n";
    std::cout << "D=" << format_gates(red.D) << "\n";
    std::cout << "verified=" << yes_no(ok) << "\n";
    std::cout << "# distance=" << dt(d_orig) << "  css_distance=" << dt(d_red) << "\n";
    std::cout << serialize_code(red.css);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diagonal logical operators of CSS codes"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* s, bool file) {
    if (file) s->add_option("file", cfg.path, "Code file")->required();
    s->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    s->add_flag("--no-verify", cfg.no_verify, "Skip the oracle check of results");
  };
  auto add_level = [&](CLI::App* s) { s->add_option("-t,--level", cfg.t, "Clifford hierarchy level")->required(); };

  auto* identities = app.add_subcommand("identities", "Diagonal logical identities (K_M)");
  add_common(identities, true);
  add_level(identities);

  auto* search = app.add_subcommand("search", "Find a diagonal XP operator with a given logical action");
  add_common(search, true);
  add_level(search);
  search->add_option("--target", cfg.target, "Logical action, e.g. \"CZ[0,1]\"")->required();

  auto* test = app.add_subcommand("test", "Decide whether a diagonal XP operator is logical");
  add_common(test, true);
  add_level(test);
  test->add_option("--z", cfg.z, "Z-component digits")->required();

  auto* generators = app.add_subcommand("generators", "Generators of the diagonal logical operators");
  add_common(generators, true);
  add_level(generators);

  auto* action = app.add_subcommand("action", "Logical action of a diagonal XP operator");
  add_common(action, true);
  add_level(action);
  action->add_option("--z", cfg.z, "Z-component digits")->required();

  auto* depth_one = app.add_subcommand("depth-one", "Search for a depth-one logical operator");
  add_common(depth_one, true);
  add_level(depth_one);
  depth_one->add_option("--cycles", cfg.cycles, "Gate supports as permutation cycles, e.g. \"(0,3)(1,2)\"");
  depth_one->add_option("--target", cfg.target, "Restrict to operators with this logical action");
  depth_one->add_option("--budget", cfg.budget, "Maximum number of search states");

  auto* canonical = app.add_subcommand("canonical", "Canonical implementation of a logical CP product");
  add_common(canonical, true);
  add_level(canonical);
  canonical->add_option("--target", cfg.target, "Logical action")->required();

  auto* construct = app.add_subcommand("construct", "Code with a transversal implementation of a target");
  add_common(construct, false);
  construct->add_option("--target", cfg.target, "Logical action")->required();
  construct->add_option("-d,--distance", cfg.distance, "Side of the toric code")->required();
  construct->add_option("-t,--level", cfg.t, "Clifford hierarchy level (default: smallest that fits)");
  construct->add_option("--k", cfg.k, "Number of logical qubits (default: from the target)");

  auto* noncss = app.add_subcommand("noncss", "Map a Pauli stabiliser code to a CSS code");
  add_common(noncss, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*identities) return cmd_identities(cfg);
    if (*search) return cmd_search(cfg);
    if (*test) return cmd_test(cfg);
    if (*generators) return cmd_generators(cfg);
    if (*action) return cmd_action(cfg);
    if (*depth_one) return cmd_depth_one(cfg);
    if (*canonical) return cmd_canonical(cfg);
    if (*construct) return cmd_construct(cfg);
    if (*noncss) return cmd_noncss(cfg);
  } catch (const VerifyError& e) {
    std::cerr << "error: verification failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
