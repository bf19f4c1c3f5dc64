#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hoil/builtins.hpp"
#include "hoil/cli.hpp"

using namespace hoil;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return CliResult{code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  std::ifstream f(std::string(HOIL_GOLDEN_DIR) + "/" + name);
  REQUIRE_MESSAGE(bool(f), ("missing golden file " + name).c_str());
  std::ostringstream buffer;
  buffer << f.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("eval subcommand") {
  const CliResult r = run_cli({"eval", "-e", "1 + 2.5"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == golden("eval_add.txt"));
  CHECK(r.err.empty());

  const CliResult j = run_cli({"eval", "--json", "-e", "1 + 2.5"});
  CHECK(j.exit_code == 0);
  CHECK(j.out == golden("eval_add.json"));
}

TEST_CASE("join subcommand") {
  const CliResult r = run_cli({"join", "int", "string"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == golden("join_int_string.txt"));

  const CliResult j = run_cli({"join", "--json", "int", "string"});
  CHECK(j.exit_code == 0);
  CHECK(j.out == golden("join_int_string.json"));

  CHECK(run_cli({"join", "void", "bool"}).out == "bool\n");
  CHECK(run_cli({"join", "array<double>", "object"}).out == "object\n");
  CHECK(run_cli({"join", "bool", "context"}).out == "top\n");
  CHECK(run_cli({"join", "int", "quux"}).exit_code == 1);
}

TEST_CASE("typecheck and eval report bitwise strictness identically") {
  const CliResult r = run_cli({"eval", "-e", "true & 1"});
  CHECK(r.exit_code == 1);
  CHECK(r.out == golden("eval_strict_err.txt"));
  CHECK(r.err == golden("eval_strict_err.stderr.txt"));

  const CliResult j = run_cli({"eval", "--json", "-e", "true & 1"});
  CHECK(j.exit_code == 1);
  CHECK(j.out == golden("eval_strict_err.json"));
  CHECK(j.err.empty());

  const CliResult t = run_cli({"typecheck", "-e", "true & 1"});
  CHECK(t.exit_code == 1);
  CHECK(t.err == golden("eval_strict_err.stderr.txt"));
}

TEST_CASE("typecheck output") {
  CHECK(run_cli({"typecheck", "-e", "1 + 2.5"}).out == "double\n");
  CHECK(run_cli({"typecheck", "-e", "#d", "--context", "[d:1]"}).out == "dynamic\n");
  CHECK(run_cli({"typecheck", "--json", "-e", "1 + 2.5"}).out ==
        "{\"ok\":true,\"static_tag\":\"double\"}\n");
  CHECK(run_cli({"typecheck", "--json", "-e", "#d", "--context", "[d:1]"}).out ==
        "{\"ok\":true,\"static_tag\":null}\n");
}

TEST_CASE("kinds subcommand") {
  CHECK(run_cli({"kinds", "int"}).out == "numeric bitwise\n");
  CHECK(run_cli({"kinds", "char"}).out == "\n");
  CHECK(run_cli({"kinds", "embed"}).out == "composite function\n");
  CHECK(run_cli({"kinds", "--json", "int"}).out ==
        "{\"type\":\"int\",\"kinds\":[\"numeric\",\"bitwise\"]}\n");
  CHECK(run_cli({"kinds", "top"}).exit_code == 1);
}

TEST_CASE("table subcommand renders both halves") {
  const CliResult r = run_cli({"table"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("int, byte, long") != std::string::npos);
  CHECK(r.out.find("bool::true") != std::string::npos);
  CHECK(r.out.find("dimension") != std::string::npos);
  CHECK(r.out.find("host return type") != std::string::npos);
  CHECK(r.out.find("intensional parameter type") != std::string::npos);

  const CliResult j = run_cli({"table", "--json"});
  CHECK(j.out.find("\"return_rows\"") != std::string::npos);
  CHECK(j.out.find("\"param_rows\"") != std::string::npos);
}

TEST_CASE("stats and warehouse flags") {
  reset_tick_counter();
  const CliResult on =
      run_cli({"eval", "--stats", "-e", "x + x where x = tick() end"});
  CHECK(on.exit_code == 0);
  CHECK(on.out == "2:int\nwarehouse: hits=1 misses=1 entries=1\n");

  reset_tick_counter();
  const CliResult off =
      run_cli({"eval", "--no-warehouse", "-e", "x + x where x = tick() end"});
  CHECK(off.out == "3:int\n");
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).exit_code == 2);
  CHECK(run_cli({"bogus"}).exit_code == 2);
  CHECK(run_cli({"eval"}).exit_code == 2);                       // no input
  CHECK(run_cli({"eval", "-f", "/nonexistent.hoil"}).exit_code == 3);
  CHECK(run_cli({"eval", "-e", "1 +"}).exit_code == 1);          // syntax
  CHECK(run_cli({"eval", "-e", "1 / 0"}).exit_code == 1);        // runtime
}

TEST_CASE("program files with headers") {
  const std::string path = std::string(HOIL_GOLDEN_DIR) + "/demo_program.hoil";
  const CliResult r = run_cli({"eval", "-f", path});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "8:int\n");
  const CliResult c = run_cli({"eval", "-f", path, "--context", "[k:5]"});
  CHECK(c.out == "32:int\n");
}

TEST_CASE("signature files load over the CLI") {
  const std::string path = std::string(HOIL_GOLDEN_DIR) + "/demo_signatures.sig";
  const CliResult r =
      run_cli({"eval", "-e", "square(7)", "--signatures", path});
  // declared but without a host binding: the call itself fails, typed
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("no host binding") != std::string::npos);
  const CliResult ok =
      run_cli({"typecheck", "-e", "square(7)", "--signatures", path});
  CHECK(ok.exit_code == 0);
  CHECK(ok.out == "int\n");
}
