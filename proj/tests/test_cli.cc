#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pera/cli.hh"
#include "pera/serialize.hh"

using namespace pera;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result cli(const std::vector<std::string>& args)
{
  std::ostringstream out, err;
  int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

std::string machine(const std::string& name) { return std::string(PERA_MACHINES_DIR) + "/" + name; }

fs::path scratch(const std::string& name)
{
  fs::path dir = fs::temp_directory_path() / "pera_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string encoded(const std::string& source, const std::string& variant)
{
  fs::path out = scratch(source + "." + variant + ".json");
  Result r = cli({"encode", machine(source), "--variant", variant, "-o", out.string()});
  REQUIRE(r.status == 0);
  return out.string();
}

std::size_t count_lines(const std::string& text)
{
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

/// Strips the timings footer.
std::string body(const std::string& report) { return report.substr(0, report.find("-- timings --")); }

}  // namespace

TEST_CASE("encode")
{
  Result r = cli({"encode", machine("loop.2cm"), "--variant", "wrapped", "-o", scratch("loop.json").string()});
  CHECK(r.status == 0);
  CHECK(r.out == "variant: wrapped\nlocations: 9\nedges: 49\n");
  CHECK(load_pera(scratch("loop.json").string()).locations.size() == 9);

  Result to_stdout = cli({"encode", machine("inc3.2cm")});
  CHECK(to_stdout.status == 0);
  CHECK(parse_pera(to_stdout.out).edges.size() == 55);

  Pera safety = load_pera(encoded("inc3.2cm", "safety"));
  for (const auto& edge : safety.edges)
    if (edge.to == "l_sink")
      CHECK(edge.action == "a_3");

  fs::path bad = scratch("bad.2cm");
  std::ofstream(bad) << "init: s0\nhalt: sh\ns0: inc c7 goto sh\n";
  Result failed = cli({"encode", bad.string()});
  CHECK(failed.status == 1);
  CHECK(failed.err.find("line 3") != std::string::npos);

  CHECK(cli({"encode", machine("inc3.2cm"), "--variant", "fancy"}).status == 1);
  CHECK(cli({"frobnicate"}).status == 1);
  CHECK(cli({"--help"}).status == 0);
}

TEST_CASE("lang")
{
  std::string inc3 = encoded("inc3.2cm", "wrapped");
  Result r = cli({"lang", inc3, "-p", "p=0", "-k", "3"});
  CHECK(r.status == 0);
  CHECK(r.out.find("prefix_words: 85\n") != std::string::npos);
  CHECK(r.out.find("maximal_finite_words: 0\n") != std::string::npos);

  Result loop = cli({"lang", encoded("loop.2cm", "wrapped"), "-p", "p=2", "-k", "8"});
  CHECK(loop.status == 0);
  CHECK(loop.out.find("maximal_finite_words: 0\n") == std::string::npos);

  CHECK(cli({"lang", inc3, "-k", "3"}).status == 1);
  CHECK(cli({"lang", inc3, "-p", "p=-1"}).status == 1);
  CHECK(cli({"lang", inc3, "-p", "p=2", "--semantics", "buchi"}).status == 1);
  CHECK(cli({"lang", inc3, "-p", "p=2", "-k", "8", "--node-limit", "10"}).status == 2);

  SUBCASE("rational valuations are rescaled")
  {
    Pera a;
    a.alphabet.add("a", "x");
    a.alphabet.add("b", "y");
    a.params = {"p"};
    a.locations = {{"l0", parse_guard("x <= p")}, {"l1", {}}};
    a.initial = "l0";
    a.edges = {{"l0", parse_guard("x = p"), "a", "l0"}, {"l0", parse_guard("y >= 1 && x < 1"), "b", "l1"}};
    fs::path half = scratch("half.json");
    save_pera(half.string(), a);

    Pera doubled = a;
    doubled.edges[1].guard = parse_guard("y >= 2 && x < 2");
    fs::path twice = scratch("doubled.json");
    save_pera(twice.string(), doubled);

    Result scaled = cli({"lang", half.string(), "-p", "p=1/2", "-k", "4"});
    Result reference = cli({"lang", twice.string(), "-p", "p=1", "-k", "4"});
    CHECK(scaled.status == 0);
    CHECK(scaled.out == reference.out);
    CHECK(scaled.err.find("rescaled by factor 2") != std::string::npos);
  }
}

TEST_CASE("compare")
{
  std::string inc3 = encoded("inc3.2cm", "wrapped");
  Result same = cli({"compare", inc3, "-p", "p=2", "-q", "p=2", "-k", "5"});
  CHECK(same.status == 0);
  CHECK(same.out.ends_with("equal up to bound 5\n"));

  Result loop = cli({"compare", encoded("loop.2cm", "wrapped"), "-p", "p=0", "-q", "p=2", "-k", "8"});
  CHECK(loop.status == 0);
  CHECK(loop.out.find("differs: maximal_finite_words") != std::string::npos);
  CHECK(loop.out.find("only on the right side") != std::string::npos);
}

TEST_CASE("theorem-check")
{
  Result loop = cli({"theorem-check", machine("loop.2cm"), "--values", "1,2,3,4", "-k", "6"});
  CHECK(loop.status == 0);
  CHECK(loop.out.find("interpreter: no halt within") != std::string::npos);
  CHECK(loop.out.find("consistent with non-halting\n") != std::string::npos);
  for (const char* v : {"p=1: differs", "p=2: differs", "p=3: differs", "p=4: differs"})
    CHECK(loop.out.find(v) != std::string::npos);

  Result inc3 = cli({"theorem-check", machine("inc3.2cm"), "--values", "2,3,5", "-k", "4"});
  CHECK(inc3.out.find("interpreter: halts after 3 steps") != std::string::npos);
  CHECK(inc3.out.find("== verdicts vs p=0 ==") != std::string::npos);

  Result again = cli({"theorem-check", machine("loop.2cm"), "--values", "1,2,3,4", "-k", "6"});
  CHECK(body(again.out) == body(loop.out));
  CHECK(loop.out.find("-- end timings --") != std::string::npos);

  Result limited = cli({"theorem-check", machine("loop.2cm"), "--values", "2", "-k", "6", "--node-limit", "10"});
  CHECK(limited.status == 2);
  CHECK(limited.out.find("resource exhausted") != std::string::npos);

  CHECK(cli({"theorem-check", machine("loop.2cm")}).status == 1);
}

TEST_CASE("simulate")
{
  Result inc3 = cli({"simulate", machine("inc3.2cm"), "--steps", "10"});
  CHECK(inc3.status == 0);
  CHECK(inc3.out == "(s0, 0, 0)\n(s1, 1, 0)\n(s2, 2, 0)\n(sh, 3, 0)\nhalted after 3 steps\n");

  Result loop = cli({"simulate", machine("loop.2cm"), "--steps", "5"});
  CHECK(count_lines(loop.out) == 7);
  CHECK(loop.out.ends_with("not halted after 5 steps\n"));

  Result zero = cli({"simulate", machine("inc3.2cm"), "--steps", "0"});
  CHECK(zero.out == "(s0, 0, 0)\nnot halted after 0 steps\n");

  CHECK(cli({"simulate", "/nonexistent.2cm"}).status == 1);
}

TEST_CASE("graph")
{
  Result r = cli({"graph", encoded("inc3.2cm", "wrapped"), "-p", "p=0"});
  CHECK(r.status == 0);
  CHECK(r.out.starts_with("digraph zone_graph {"));
  CHECK(r.out.find("l_acc2") != std::string::npos);
  CHECK(r.out.find("l_s0") == std::string::npos);
}
