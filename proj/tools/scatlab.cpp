// Command-line front end. Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "oracles/cluster_exchange.hpp"
#include "scatlab/completion.hpp"
#include "scatlab/error.hpp"
#include "scatlab/io.hpp"

using namespace scat;

namespace {

struct Options {
  std::string matrix, diagram, other, fan, out, format = "json", m0, q, check_kind, render_kind;
  int order = 8;
  std::size_t depth = 6;
  bool depth_set = false;
  std::size_t k = 0;
  std::uint64_t seed = 1;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    io::write_file(o.out, text);
  }
}

ExchangeMatrix load_matrix(const Options& o) {
  if (o.matrix.empty()) throw UsageError("--matrix is required");
  return io::matrix_from_json(io::parse(io::read_file(o.matrix)));
}

ScatteringDiagram load_diagram(const std::string& path) {
  if (path.empty()) throw UsageError("a diagram file is required");
  return io::diagram_from_json(io::parse(io::read_file(path)));
}

std::size_t unfrozen_index(const Options& o, std::size_t n_uf) {
  if (o.k < 1 || o.k > n_uf) throw UsageError("--k must be an unfrozen index between 1 and " + std::to_string(n_uf));
  return o.k - 1;
}

MVector parse_ints(const std::string& csv) {
  MVector out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw UsageError("not an integer list: " + csv);
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

RVec parse_rats(const std::string& csv) {
  RVec out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(rat_from_string(item));
  return out;
}

/// Rank 2 gets the full completion; higher rank gets the cluster subdiagram at --depth.
ScatteringDiagram scatter_for(const ExchangeMatrix& b, const Options& o) {
  if (b.n_uf() == 2) return cluster_scatter_rank2(b, o.order);
  return cluster_subdiagram(b, o.depth, o.order);
}

int report(bool pass, const std::string& what) {
  std::cout << (pass ? "PASS " : "FAIL ") << what << "\n";
  return pass ? 0 : 1;
}

oracle::Poly to_oracle(const LaurentPolynomial& p) {
  oracle::Poly out;
  for (const auto& [m, c] : p) out[oracle::Exp(m.begin(), m.end())] = c;
  return out;
}

int run_check(const Options& o) {
  const auto& kind = o.check_kind;
  if (kind == "consistency") {
    auto d = o.diagram.empty() ? scatter_for(load_matrix(o), o) : load_diagram(o.diagram);
    auto r = check_consistency(d);
    for (const auto& f : r.failures) std::cout << "  " << f << "\n";
    if (d.rank() == 2 && !path_ordered_product(d, loop_around_origin(d, o.seed)).is_identity()) {
      std::cout << "  product around the origin loop is not the identity\n";
      r.pass = false;
    }
    return report(r.pass, "consistency (" + std::to_string(r.joints_checked) + " joints)");
  }
  if (kind == "equivalence") {
    return report(equivalent(load_diagram(o.diagram), load_diagram(o.other)), "equivalence");
  }
  if (kind == "refinement") {
    if (o.fan.empty() || o.other.empty()) throw UsageError("refinement needs --fan and --other");
    auto fine = io::fan_from_json(io::parse(io::read_file(o.fan)));
    auto coarse = io::fan_from_json(io::parse(io::read_file(o.other)));
    auto r = check_refinement(fine, coarse);
    if (r.witness) std::cout << "  cone " << *r.witness << " of the finer fan lies in no coarse cone\n";
    return report(r.ok, "refinement");
  }
  if (kind == "mutation-equiv") {
    auto b = load_matrix(o);
    if (b.n_uf() != 2) throw UsageError("mutation-equiv is checked in rank 2");
    auto k = unfrozen_index(o, b.n_uf());
    return report(verify_mutation_equiv(b, k, o.order), "mutation-equiv k=" + std::to_string(o.k) + " order " + std::to_string(o.order));
  }
  if (kind == "theta-oracle") {
    auto b = load_matrix(o);
    InitialData data(b);
    std::vector<std::vector<long>> rows(b.n_uf());
    for (std::size_t i = 0; i < b.n_uf(); ++i)
      for (std::size_t j = 0; j < b.n_total(); ++j) rows[i].push_back(b(i, j));
    auto census = oracle::all_variables(rows, o.depth);
    if (!census.closed) throw UsageError("exchange graph did not close within --depth; theta-oracle needs finite type");
    auto fan = chamber_fan(b.square_block(), o.depth);
    std::set<oracle::Poly> mine;
    for (const auto& ch : fan.chambers)
      for (const auto& r : ch.cone.rays()) {
        MVector m0;
        for (const auto& x : primitive_direction(r)) m0.push_back(x.get_num().get_si());
        mine.insert(to_oracle(clear_frozen(to_laurent(data, theta_pop(b, m0, o.depth, o.order)), b.n_uf())));
      }
    return report(mine == census.variables, "theta-oracle (" + std::to_string(census.variables.size()) + " cluster variables)");
  }
  throw UsageError("unknown check '" + kind + "'");
}

int run(const std::string& verb, const Options& o) {
  if (verb == "scatter") {
    auto b = load_matrix(o);
    if (o.format == "tsv") {
      emit(o, census_tsv(wall_census(b, o.order)));
    } else {
      emit(o, io::dump(io::to_json(scatter_for(b, o))));
    }
    return 0;
  }
  if (verb == "mutate") {
    auto b = load_matrix(o);
    emit(o, io::dump(io::to_json(b.mutated(unfrozen_index(o, b.n_uf())))));
    return 0;
  }
  if (verb == "transport") {
    auto d = load_diagram(o.diagram);
    emit(o, io::dump(io::to_json(apply_M_k(d, unfrozen_index(o, d.rank())))));
    return 0;
  }
  if (verb == "chambers") {
    auto b = load_matrix(o).square_block();
    emit(o, io::dump(io::to_json(chamber_fan(b, o.depth), b)));
    return 0;
  }
  if (verb == "fan") {
    auto d = o.diagram.empty() ? scatter_for(load_matrix(o), o) : load_diagram(o.diagram);
    auto f = scat_fan(d);
    emit(o, o.format == "svg" ? io::render_svg(f) : io::dump(io::to_json(f)));
    return 0;
  }
  if (verb == "mutation-fan") {
    auto b = load_matrix(o).square_block();
    Fan f;
    if (o.depth_set) {
      f = mutation_fan(b, o.depth);
    } else {
      auto st = mutation_fan_stable(b, 12);
      std::cerr << (st.stabilized ? "stable from depth " : "not stable by depth ") << st.depth << "\n";
      f = st.fan;
    }
    emit(o, o.format == "svg" ? io::render_svg(f) : io::dump(io::to_json(f)));
    return 0;
  }
  if (verb == "pop") {
    auto b = load_matrix(o);
    InitialData data(b);
    emit(o, io::dump(io::to_json(to_laurent(data, theta_pop(b, parse_ints(o.m0), o.depth, o.order)))));
    return 0;
  }
  if (verb == "theta") {
    auto b = load_matrix(o);
    if (b.n_uf() != 2) throw UsageError("broken lines are computed in rank 2");
    auto d = cluster_scatter_rank2(b, o.order);
    RVec q = o.q.empty() ? default_basepoint(2) : parse_rats(o.q);
    emit(o, io::dump(io::to_json(to_laurent(d.data(), theta_broken(d, parse_ints(o.m0), q, o.order)))));
    return 0;
  }
  if (verb == "check") return run_check(o);
  if (verb == "render") {
    if (!o.fan.empty()) {
      emit(o, io::render_svg(io::fan_from_json(io::parse(io::read_file(o.fan)))));
    } else {
      emit(o, io::render_svg(load_diagram(o.diagram)));
    }
    return 0;
  }
  throw UsageError("unknown verb");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact scattering diagrams, fans and theta functions"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--matrix", o.matrix, "exchange matrix JSON");
    sub->add_option("--diagram", o.diagram, "diagram JSON");
    sub->add_option("--order", o.order, "truncation order k")->check(CLI::NonNegativeNumber);
    sub->add_option_function<std::size_t>("--depth", [&](const std::size_t& d) {
      o.depth = d;
      o.depth_set = true;
    }, "mutation depth");
    sub->add_option("--k", o.k, "mutation index, 1-based");
    sub->add_option("--m0", o.m0, "exponent as comma-separated integers");
    sub->add_option("--q", o.q, "basepoint as comma-separated rationals");
    sub->add_option("--seed", o.seed, "seed for the generic loop perturbation in check consistency");
    sub->add_option("--out", o.out, "output path, stdout when omitted");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "tsv", "svg"}));
    sub->add_option("--fan", o.fan, "fan JSON");
    sub->add_option("--other", o.other, "second diagram or fan for comparisons");
  };
  const std::pair<const char*, const char*> verbs[] = {
      {"scatter", "consistent completion (rank 2) or cluster subdiagram"},
      {"mutate", "mutate the matrix at --k"},
      {"transport", "transport a diagram across the wall at --k"},
      {"chambers", "chamber fan reachable within --depth"},
      {"fan", "scattering fan of a diagram"},
      {"mutation-fan", "mutation fan up to --depth"},
      {"pop", "theta function from path-ordered products"},
      {"theta", "theta function from broken lines at --q"},
      {"render", "SVG picture of a rank-2 diagram or fan"}};
  for (const auto& [verb, help] : verbs) add_common(app.add_subcommand(verb, help));
  auto* check = app.add_subcommand("check", "verify a property and print PASS or FAIL");
  add_common(check);
  check->add_option("kind", o.check_kind, "consistency | equivalence | refinement | mutation-equiv | theta-oracle")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    return run(verb, o);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
