#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "oracles/rank2_factorization.hpp"
#include "scatlab/completion.hpp"
#include "scatlab/io.hpp"
#include "support/fixtures.hpp"

using namespace scat;
using fixtures::code_of;
using fixtures::rv;

namespace {

const std::string kSource = SCAT_SOURCE_DIR;

std::string roundtrip(const std::string& text, auto&& from, auto&& to) { return io::dump(to(from(io::parse(text)))); }

std::string diagram_text(const ScatteringDiagram& d) { return io::dump(io::to_json(d)); }

int run_cli(const std::string& args) {
  int status = std::system((std::string(SCAT_CLI) + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("matrix files") {
  for (const char* name : {"a2", "b2", "g2", "kronecker", "a3", "markov", "triple_cycle", "a2_principal"}) {
    auto text = io::read_file(kSource + "/fixtures/" + name + ".json");
    auto b = io::matrix_from_json(io::parse(text));
    CHECK(io::dump(io::to_json(b)) == text);
  }
  CHECK(io::matrix_from_json(io::parse(io::read_file(kSource + "/fixtures/g2.json"))) == fixtures::g2());
  CHECK(code_of([] { io::matrix_from_json(io::parse(R"({"n_uf": 2, "n_total": 2, "rows": [[0, 1], [1, 0]]})")); }) ==
        ErrorCode::NotSkewSymmetrizable);
  CHECK(code_of([] { io::matrix_from_json(io::parse(R"({"n_uf": 2, "rows": [[0, 1], [-1, 0]]})")); }) == ErrorCode::ParseError);
  CHECK(code_of([] { io::parse("{\"n_uf\": "); }) == ErrorCode::ParseError);
}

TEST_CASE("series roundtrip") {
  TruncatedSeries s(2, 5);
  s.add_term({0, 0}, Rat(1));
  s.add_term({1, 2}, Rat(-7, 3));
  s.add_term({3, 0}, Rat(Int("123456789012345678901234567890")));
  auto text = io::dump(io::to_json(s));
  CHECK(io::series_from_json(io::parse(text)) == s);
  CHECK(roundtrip(text, io::series_from_json, [](const auto& x) { return io::to_json(x); }) == text);
  CHECK(text.find("\"num\": \"123456789012345678901234567890\"") != std::string::npos);
}

TEST_CASE("diagram files are byte-stable") {
  for (const auto& d : {cluster_scatter_rank2(fixtures::g2(), 7), cluster_scatter_rank2(fixtures::kronecker(), 6),
                        cluster_subdiagram(fixtures::a3(), 10, 3), fixtures::a2_completed(4),
                        cluster_scatter_rank2(fixtures::a2().with_principal_coefficients(), 5)}) {
    auto text = diagram_text(d);
    auto back = io::diagram_from_json(io::parse(text));
    CHECK(back == d.canonical());
    CHECK(diagram_text(back) == text);
  }
}

TEST_CASE("reordered keys are normalized on the first write") {
  const std::string edited = R"({"walls": [{"coeffs": ["1"], "normal": [1, 0], "cone": {"generators": [[0, 1], ["0", "-1"]]}}],
    "order": 3, "matrix": {"rows": [[0, 1], [-1, 0]], "n_total": 2, "n_uf": 2}})";
  auto once = diagram_text(io::diagram_from_json(io::parse(edited)));
  CHECK(once != edited);
  CHECK(diagram_text(io::diagram_from_json(io::parse(once))) == once);
  CHECK(once.find("\"1/1\"") != std::string::npos);
}

TEST_CASE("fan files") {
  for (const auto& f : {scat_fan(fixtures::a2_completed(4)), mutation_fan(fixtures::a3().square_block(), 2),
                        Fan::from_maximal(2, {Cone::whole(2)})}) {
    auto text = io::dump(io::to_json(f));
    CHECK(io::fan_from_json(io::parse(text)) == f);
    CHECK(roundtrip(text, io::fan_from_json, [](const auto& x) { return io::to_json(x); }) == text);
  }
  auto j = io::to_json(scat_fan(fixtures::a2_completed(4)));
  // 5 sectors with 2 edges each, 5 rays with 1 edge each
  CHECK(j["edges"].size() == 15);
}

TEST_CASE("chamber fan files") {
  auto b = fixtures::b2().square_block();
  auto fan = chamber_fan(b, 8);
  auto j = io::to_json(fan, b);
  REQUIRE(j.size() == 6);
  CHECK(j[0]["sequence"].empty());
  CHECK(j[1]["sequence"].size() == 1);
  CHECK(j[1]["sequence"][0].get<int>() >= 1);
  auto back = io::chamber_fan_from_json(j);
  REQUIRE(back.chambers.size() == fan.chambers.size());
  for (std::size_t i = 0; i < fan.chambers.size(); ++i) {
    CHECK(back.chambers[i].sequence == fan.chambers[i].sequence);
    CHECK(back.chambers[i].cone == fan.chambers[i].cone);
  }
  CHECK(io::dump(io::to_json(back, b)) == io::dump(j));
  for (const auto& c : j)
    for (const auto& n : c["facet_normals"]) CHECK(in_n_plus(n.get<NVector>()));
}

TEST_CASE("Laurent files") {
  LaurentPolynomial p{{{-1, 0, 2}, Rat(3, 2)}, {{0, 1, 0}, Rat(-1)}};
  auto text = io::dump(io::to_json(p));
  CHECK(io::laurent_from_json(io::parse(text)) == p);
  CHECK(text.find("\"3/2\"") != std::string::npos);
}

TEST_CASE("svg") {
  InitialData a2(fixtures::a2());
  auto empty = io::render_svg(ScatteringDiagram(a2, 3));
  CHECK(count(empty, "<line") == 2);
  CHECK(count(empty, "<text") == 0);
  auto full = io::render_svg(cluster_scatter_rank2(fixtures::a2(), 5));
  CHECK(count(full, "<line") == 2 + 5);
  auto g2 = io::render_svg(cluster_scatter_rank2(fixtures::kronecker(), 8));
  CHECK(g2.find("+ ...") != std::string::npos);
  CHECK(io::render_svg(scat_fan(fixtures::a2_completed(4))) == io::render_svg(scat_fan(fixtures::a2_completed(4))));
  CHECK_THROWS_AS(io::render_svg(cluster_subdiagram(fixtures::a3(), 2, 2)), Error);
}

TEST_CASE("Kronecker golden file") {
  auto golden = io::read_file(kSource + "/tests/golden/kronecker_k10.json");
  auto d = cluster_scatter_rank2(fixtures::kronecker(), 10);
  CHECK(diagram_text(d) == golden);
  // the golden content itself agrees with the commutator factorization
  auto parsed = io::diagram_from_json(io::parse(golden));
  oracle::Rank2Oracle o{parsed.data(), 10};
  auto expected = o.factor();
  std::size_t outgoing = 0;
  for (const auto& w : parsed.walls()) {
    if (!w.cone.is_pointed()) continue;
    ++outgoing;
    const auto& n = w.fn.normal();
    CHECK((std::abs(n[0] - n[1]) == 1 || n == NVector{1, 1}));
    CHECK(n[0] + n[1] <= 10);
    CHECK(w.fn.coeffs() == expected[n]);
  }
  CHECK(outgoing == expected.size());
  CHECK(outgoing == 9);
}

TEST_CASE("command line") {
  const auto fx = kSource + "/fixtures/";
  auto tmp = std::filesystem::temp_directory_path() / "scatlab_cli_test";
  std::filesystem::create_directories(tmp);
  const auto a2 = (tmp / "a2.scat.json").string();
  CHECK(run_cli("scatter --matrix " + fx + "a2.json --order 8 --out " + a2) == 0);
  auto d = io::diagram_from_json(io::parse(io::read_file(a2)));
  CHECK(ramparts(d).size() == 3);
  const auto again = (tmp / "a2.again.json").string();
  CHECK(run_cli("scatter --matrix " + fx + "a2.json --order 8 --out " + again) == 0);
  CHECK(io::read_file(again) == io::read_file(a2));

  CHECK(run_cli("check mutation-equiv --matrix " + fx + "a2.json --k 1 --order 8") == 0);
  CHECK(run_cli("check consistency --diagram " + a2) == 0);
  CHECK(run_cli("check equivalence --diagram " + a2 + " --other " + a2) == 0);

  // an incomplete diagram fails verification with exit code 1
  const auto broken = (tmp / "initial.json").string();
  io::write_file(broken, diagram_text(initial_diagram(InitialData(fixtures::a2()), 8)));
  CHECK(run_cli("check consistency --diagram " + broken) == 1);
  CHECK(run_cli("check equivalence --diagram " + a2 + " --other " + broken) == 1);

  const auto empty = (tmp / "empty.json").string();
  io::write_file(empty, diagram_text(ScatteringDiagram(InitialData(fixtures::a2()), 3)));
  const auto svg = (tmp / "empty.svg").string();
  CHECK(run_cli("render --diagram " + empty + " --out " + svg) == 0);
  CHECK(count(io::read_file(svg), "<line") == 2);

  CHECK(run_cli("") == 2);
  CHECK(run_cli("scatter") == 2);
  CHECK(run_cli("scatter --matrix /nonexistent.json") == 2);
  CHECK(run_cli("mutate --matrix " + fx + "a2.json --k 3") == 2);
  CHECK(run_cli("check nonsense --matrix " + fx + "a2.json") == 2);
  CHECK(run_cli("scatter --matrix " + fx + "a2.json --format xml") == 2);
  std::filesystem::remove_all(tmp);
}
