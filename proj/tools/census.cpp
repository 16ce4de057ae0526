#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "census/census.hpp"
#include "census/errors.hpp"

using namespace census;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kResourceFailure = 2;

struct RunFlags {
  std::string format = "text";
  int threads = 1;
  std::uint64_t max_nodes = 0;
  bool resume = false;
  bool extended = false;
  std::string fixture;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string slot_h1(const ManifoldRecord& r) {
  try {
    return format_h1(*r.homology);
  } catch (const OverflowSlotError&) {
    return r.homology->to_string();
  }
}

int manifold_of(const SolidCensus& c, int id) {
  for (std::size_t k = 0; k < c.report.classes.size(); ++k) {
    for (int x : c.report.classes[k]) {
      if (x == id) return static_cast<int>(k) + 1;
    }
  }
  return 0;
}

void print_text(const SolidCensus& c, std::ostream& out) {
  const bool cusped = !c.solid.compact;
  out << "solid " << c.solid.key() << " (" << c.solid.name() << ", " << to_string(c.solid.geometry) << ")\n";
  out << "records " << c.records.size() << ", manifolds " << c.report.classes.size() << ", search nodes "
      << c.nodes_explored << (c.from_cache ? " (from cache)" : "") << "\n";
  if (c.records.empty()) return;
  out << "  N  M  FI  EI  " << (cusped ? "C  " : "") << "H1\n";
  for (const ManifoldRecord& r : c.records) {
    out << "  " << r.id << "  " << manifold_of(c, r.id) << "  " << r.fi << "  " << r.ei << "  ";
    if (cusped) out << r.cusp_count << "  ";
    out << slot_h1(r) << "  [" << r.homology->to_string() << "]\n";
    for (const std::string& f : r.external_flags) out << "     flag: " << f << "\n";
  }
  for (const std::string& line : c.report.log) out << "  log: " << line << "\n";
  for (const std::string& line : c.report.notes) out << "  note: " << line << "\n";
  for (const std::string& line : c.warnings) out << "  warning: " << line << "\n";
}

void print_csv_header(std::ostream& out) { out << "solid,N,manifold,FI,EI,cusps,H1,H1_invariants,code\n"; }

void print_csv(const SolidCensus& c, std::ostream& out) {
  for (const ManifoldRecord& r : c.records) {
    out << csv_field(c.solid.key()) << ',' << r.id << ',' << manifold_of(c, r.id) << ',' << r.fi << ','
        << csv_field(r.ei) << ',' << r.cusp_count << ',' << csv_field(slot_h1(r)) << ','
        << csv_field(r.homology->to_string()) << ',' << csv_field(r.code) << '\n';
  }
}

SolidDescriptor solid_from_args(const std::vector<std::string>& args) {
  if (args.empty() || args.size() > 2) throw InvalidArgument("expected a solid such as '4,4,3 left'");
  if (args.size() == 2) return parse_solid(args[0] + ":" + args[1]);
  return parse_solid(args[0]);
}

CensusOptions census_options(const RunFlags& f) {
  CensusOptions o;
  o.threads = f.threads;
  o.max_nodes = f.max_nodes;
  o.resume_from_cache = f.resume;
  return o;
}

std::vector<SolidDescriptor> feasible_solids(bool extended) {
  std::vector<SolidDescriptor> out;
  for (const SolidDescriptor& s : solid_inventory()) {
    if (edge_divisibility_filter(s) && (extended || !requires_extended(s))) out.push_back(s);
  }
  return out;
}

int cmd_solids(const RunFlags& f) {
  const auto inventory = solid_inventory();
  nlohmann::json rows = nlohmann::json::array();
  for (const SolidDescriptor& s : inventory) {
    rows.push_back({{"solid", s.key()},
                    {"name", s.name()},
                    {"geometry", to_string(s.geometry)},
                    {"dihedral_angle", "2pi/" + std::to_string(s.dihedral_denominator)},
                    {"faces", s.faces},
                    {"edges", s.edges},
                    {"feasible", edge_divisibility_filter(s)},
                    {"extended", requires_extended(s)}});
  }
  if (f.format == "json") {
    std::cout << rows.dump(1) << '\n';
  } else if (f.format == "csv") {
    std::cout << "solid,name,geometry,dihedral_angle,faces,edges,feasible,extended\n";
    for (const auto& r : rows) {
      std::cout << csv_field(r["solid"]) << ',' << r["name"].get<std::string>() << ','
                << r["geometry"].get<std::string>() << ',' << r["dihedral_angle"].get<std::string>() << ','
                << r["faces"] << ',' << r["edges"] << ',' << r["feasible"] << ',' << r["extended"] << '\n';
    }
  } else {
    for (const auto& r : rows) {
      std::printf("%-12s %-13s %-22s %-7s %s\n", r["solid"].get<std::string>().c_str(),
                  r["name"].get<std::string>().c_str(), r["geometry"].get<std::string>().c_str(),
                  r["dihedral_angle"].get<std::string>().c_str(),
                  r["feasible"].get<bool>() ? "feasible" : "infeasible (edge count)");
    }
  }
  return kOk;
}

int cmd_enumerate(const std::vector<std::string>& args, const RunFlags& f) {
  const SolidDescriptor solid = solid_from_args(args);
  if (!edge_divisibility_filter(solid)) {
    std::cerr << solid.key() << " is ruled out by edge divisibility; empty census\n";
    return kOk;
  }
  if (requires_extended(solid) && !f.extended) {
    std::cerr << solid.key() << " belongs to the extended suite; pass --extended\n";
    return kResourceFailure;
  }
  const SolidCensus c = run_census(solid, census_options(f));
  if (f.format == "json") {
    std::cout << to_json(c).dump(1) << '\n';
  } else if (f.format == "csv") {
    print_csv_header(std::cout);
    print_csv(c, std::cout);
  } else {
    print_text(c, std::cout);
  }
  return kOk;
}

std::vector<SolidDescriptor> selected(const std::vector<std::string>& args, const RunFlags& f) {
  if (args.empty()) return feasible_solids(f.extended);
  std::vector<SolidDescriptor> out;
  for (const std::string& a : args) out.push_back(parse_solid(a));
  return out;
}

int cmd_verify(const std::vector<std::string>& args, RunFlags f) {
  const Fixture fixture = load_fixture(f.fixture.empty() ? default_fixture_path() : std::filesystem::path(f.fixture));
  bool ok = true;
  nlohmann::json out = nlohmann::json::array();

  const auto inventory = solid_inventory();
  int excluded = 0;
  for (const SolidDescriptor& s : inventory) excluded += edge_divisibility_filter(s) ? 0 : 1;
  const bool inventory_ok = static_cast<int>(inventory.size()) == fixture.inventory_solids &&
                            excluded == fixture.inventory_excluded;
  ok = ok && inventory_ok;
  if (f.format == "text") {
    std::cout << (inventory_ok ? "PASS" : "FAIL") << " inventory: " << inventory.size() << " solids, " << excluded
              << " excluded\n";
  }

  f.resume = true;
  for (const SolidDescriptor& s : selected(args, f)) {
    const FixtureSolid* expected = fixture.find(s.key());
    if (!expected) {
      std::cerr << "no fixture entry for " << s.key() << '\n';
      ok = false;
      continue;
    }
    const SolidCensus c = run_census(s, census_options(f));
    const VerifyResult v = verify_against_fixture(c, *expected);
    ok = ok && v.passed;
    if (f.format == "text") {
      std::cout << (v.passed ? "PASS " : "FAIL ") << v.key << ": " << c.report.classes.size() << " manifolds\n";
      for (const auto& m : v.failures) std::cout << "  failure: " << m << '\n';
      for (const auto& m : v.warnings) std::cout << "  warning: " << m << '\n';
    } else {
      out.push_back({{"solid", v.key}, {"passed", v.passed}, {"failures", v.failures}, {"warnings", v.warnings}});
    }
  }
  if (f.format == "json") {
    std::cout << nlohmann::json{{"inventory_passed", inventory_ok}, {"solids", out}, {"passed", ok}}.dump(1) << '\n';
  } else if (f.format == "csv") {
    std::cout << "solid,passed,failures,warnings\n";
    for (const auto& r : out) {
      std::cout << csv_field(r["solid"]) << ',' << r["passed"] << ',' << r["failures"].size() << ','
                << r["warnings"].size() << '\n';
    }
  }
  return ok ? kOk : kVerifyFailed;
}

int cmd_table(const std::vector<std::string>& args, RunFlags f) {
  f.resume = true;
  nlohmann::json all = nlohmann::json::array();
  if (f.format == "csv") print_csv_header(std::cout);
  for (const SolidDescriptor& s : selected(args, f)) {
    const SolidCensus c = run_census(s, census_options(f));
    if (f.format == "json") {
      all.push_back(to_json(c));
    } else if (f.format == "csv") {
      print_csv(c, std::cout);
    } else {
      print_text(c, std::cout);
      std::cout << '\n';
    }
  }
  if (f.format == "json") std::cout << all.dump(1) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Census of 3-manifolds from face pairings of Platonic solids"};
  app.require_subcommand(1);
  RunFlags flags;
  std::vector<std::string> args;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", flags.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  };
  auto add_run = [&](CLI::App* cmd) {
    add_common(cmd);
    cmd->add_option("--threads", flags.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--max-nodes", flags.max_nodes, "search node budget, 0 = unlimited");
    cmd->add_flag("--extended", flags.extended, "include the long-running solids");
  };

  auto* solids = app.add_subcommand("solids", "list the solid inventory");
  add_common(solids);

  auto* enumerate = app.add_subcommand("enumerate", "run the census of one solid, e.g. '4,4,3 left'");
  add_run(enumerate);
  enumerate->add_flag("--resume-from-cache", flags.resume, "reuse a cached census with the same constraints");
  enumerate->add_option("solid", args, "p,q,r and left|right")->required();

  auto* verify = app.add_subcommand("verify", "compare censuses with the fixture");
  add_run(verify);
  verify->add_option("--fixture", flags.fixture, "fixture JSON");
  verify->add_option("solids", args, "solid keys p,q,r:node (default: all feasible)");

  auto* table = app.add_subcommand("table", "print census tables");
  add_run(table);
  table->add_option("solids", args, "solid keys p,q,r:node (default: all feasible)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solids) return cmd_solids(flags);
    if (*enumerate) return cmd_enumerate(args, flags);
    if (*verify) return cmd_verify(args, flags);
    if (*table) return cmd_table(args, flags);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kResourceFailure;
  } catch (const CertificationFailure& e) {
    std::cerr << "certification failure: " << e.what() << '\n';
    return kResourceFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResourceFailure;
  }
  return kOk;
}
