#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "arquiver/cli.hpp"

using namespace arq;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "arquiver_cli_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream f(path);
  f << content;
  return path.string();
}

std::string a2_path() {
  return write_temp("a2.quiver", "vertices 2\narrow a 1 2\n");
}
std::string p1_path() { return write_temp("P1.rep", "dims 1 1\nmap a\n1\n"); }
std::string s1_path() { return write_temp("S1.rep", "dims 1 0\n"); }
std::string s2_path() { return write_temp("S2.rep", "dims 0 1\n"); }

struct EnvGuard {
  EnvGuard() { unsetenv("ARQUIVER_FORMAT"); }
  ~EnvGuard() { unsetenv("ARQUIVER_FORMAT"); }
};

}  // namespace

TEST_CASE("usage and unknown commands exit 2") {
  EnvGuard env;
  RunResult none = run({});
  CHECK(none.code == 2);
  CHECK(none.err.find("usage") != std::string::npos);

  RunResult bad = run({"frobnicate"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("unknown command") != std::string::npos);
  CHECK(bad.err.find("usage") != std::string::npos);

  RunResult opt = run({"cartan", a2_path(), "--wat"});
  CHECK(opt.code == 2);
}

TEST_CASE("missing and malformed inputs exit 2") {
  EnvGuard env;
  CHECK(run({"cartan", "/nonexistent/q.quiver"}).code == 2);
  CHECK(run({"cartan"}).code == 2);
  std::string bad = write_temp("bad.quiver", "vertices 2\narrow a 1 5\n");
  RunResult r = run({"cartan", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK(run({"regular", a2_path()}).code == 2);              // missing --weight
  CHECK(run({"regular", a2_path(), "--weight", "1"}).code == 2);  // length
  CHECK(run({"euler", a2_path(), "1,1", "zzz"}).code == 2);
  CHECK(run({"cartan", a2_path(), "--seed", "pony"}).code == 2);
}

TEST_CASE("cartan and coxeter records output") {
  EnvGuard env;
  RunResult r =
      run({"coxeter", a2_path(), "--format", "records"});
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "n=2\n"
        "cartan.0=1,0\n"
        "cartan.1=1,1\n"
        "phi.0=0,-1\n"
        "phi.1=1,-1\n"
        "psi.0=-1,-1\n"
        "psi.1=1,0\n"
        "phi_right.0=-1,-1\n"
        "phi_right.1=1,0\n"
        "phi_right_equals_psi=true\n"
        "order=3\n");

  RunResult human = run({"coxeter", a2_path()});
  REQUIRE(human.code == 0);
  CHECK(human.out.find("0 -1\n1 -1\n") != std::string::npos);
  CHECK(human.out.find("phi_right equals psi: yes") != std::string::npos);
  CHECK(human.out.find("order of phi: 3") != std::string::npos);

  RunResult cartan = run({"cartan", a2_path(), "--format", "records"});
  CHECK(cartan.out == "n=2\ncartan.0=1,0\ncartan.1=1,1\n");
}

TEST_CASE("roots and regular") {
  EnvGuard env;
  RunResult r = run({"roots", a2_path(), "--format", "records"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "count=3\nroot.0=0,1\nroot.1=1,0\nroot.2=1,1\n");

  RunResult reg = run({"regular", a2_path(), "--weight", "1,1"});
  REQUIRE(reg.code == 0);
  CHECK(reg.out == "regular\n");

  RunResult irr =
      run({"regular", a2_path(), "--weight", "1,-1", "--format", "records"});
  REQUIRE(irr.code == 0);
  CHECK(irr.out == "regular=false\nwitness=1,1\n");

  // Positive-root listings only exist for Dynkin shapes.
  std::string kron = write_temp("kron.quiver",
                                "vertices 2\narrow a 1 2\narrow b 1 2\n");
  CHECK(run({"roots", kron}).code == 2);
}

TEST_CASE("knit output") {
  EnvGuard env;
  RunResult human = run({"knit", a2_path()});
  REQUIRE(human.code == 0);
  CHECK(human.out ==
        "node 0 1,1 PI\n"
        "node 1 0,1 P\n"
        "node 2 1,0 I\n"
        "mesh 1 0 1\n"
        "mesh 0 2 1\n"
        "tau 2 1\n");

  RunResult rec = run({"knit", a2_path(), "--format", "records"});
  REQUIRE(rec.code == 0);
  CHECK(rec.out ==
        "nodes=3\n"
        "node.0=1,1;PI\n"
        "node.1=0,1;P\n"
        "node.2=1,0;I\n"
        "mesh.0=1,0,1\n"
        "mesh.1=0,2,1\n"
        "tau.0=2,1\n");
}

TEST_CASE("hom, ext, euler, chern, hh0") {
  EnvGuard env;
  CHECK(run({"hom", a2_path(), p1_path(), p1_path(), "--format", "records"})
            .out == "hom=1\n");
  CHECK(run({"hom", a2_path(), s1_path(), p1_path(), "--format", "records"})
            .out == "hom=0\n");
  CHECK(run({"ext", a2_path(), s1_path(), s2_path(), "--format", "records"})
            .out == "ext1=1\n");
  CHECK(run({"ext", a2_path(), s2_path(), s1_path(), "--format", "records"})
            .out == "ext1=0\n");
  CHECK(run({"euler", a2_path(), "1,1", "0,1", "--format", "records"}).out ==
        "euler=0\n");
  CHECK(run({"euler", a2_path(), "1,0", "0,1", "--format", "records"}).out ==
        "euler=-1\n");
  CHECK(run({"chern", a2_path(), p1_path(), "--format", "records"}).out ==
        "chern=1,1\n");
  RunResult h = run({"hh0", a2_path(), "--format", "records"});
  CHECK(h.out == "hh0=2\nbasis=e1,e2\n");
}

TEST_CASE("tau subcommand emits a readable representation") {
  EnvGuard env;
  RunResult r = run({"tau", a2_path(), s1_path()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("dims 0 1") != std::string::npos);
  RunResult rec = run({"tau", a2_path(), s1_path(), "--format", "records"});
  CHECK(rec.out.find("dims=0,1") != std::string::npos);
}

TEST_CASE("hrr prints both sides and a zero difference") {
  EnvGuard env;
  RunResult r =
      run({"hrr", a2_path(), p1_path(), s1_path(), "--format", "records"});
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "pairing=0\n"
        "hom=0\n"
        "ext1=0\n"
        "difference=0\n");

  RunResult human = run({"hrr", a2_path(), p1_path(), p1_path()});
  REQUIRE(human.code == 0);
  CHECK(human.out.find("difference = 0") != std::string::npos);
}

TEST_CASE("trace-check") {
  EnvGuard env;
  RunResult ok = run({"trace-check", a2_path(), p1_path(), "--weight", "1,1",
                      "--samples", "5", "--format", "records"});
  REQUIRE(ok.code == 0);
  CHECK(ok.out == "degenerate=false\nsamples=5\n");

  RunResult degen = run({"trace-check", a2_path(), p1_path(), "--weight",
                         "1,-1", "--format", "records"});
  REQUIRE(degen.code == 0);
  CHECK(degen.out.find("degenerate=true") != std::string::npos);
  CHECK(degen.out.find("note=degenerate weight for M") != std::string::npos);

  // Non-indecomposable input is a usage error, not an identity failure.
  std::string sum = write_temp("sum.rep", "dims 2 0\n");
  CHECK(run({"trace-check", a2_path(), sum, "--weight", "1,1"}).code == 2);
}

TEST_CASE("diagram subcommands") {
  EnvGuard env;
  CHECK(run({"diagram", "normalize", "rd(ld(X{A,B}))", "--format", "records"})
            .out == "normal=X{A,B}\n");
  CHECK(run({"diagram", "normalize", "bd(X{A,B} * Y{B,C})"}).out ==
        "bd(1{C}) * D(Y{B,C}) * bd(1{B}) * D(X{A,B}) * bd(1{A})\n");
  CHECK(run({"diagram", "equiv", "D(Y{B,C}) * bd(X{A,B})",
             "ld(X{A,B} * Y{B,C})", "--format", "records"})
            .out == "equivalent=true\n");
  CHECK(run({"diagram", "equiv", "ld(X{A,B})", "rd(X{A,B})"}).out ==
        "not equivalent\n");
  CHECK(run({"diagram", "equiv", "X{A,B}", "ld(X{A,B})"}).code == 2);
  CHECK(run({"diagram", "zigzag",
             "(eps_l(X{A,B}) * id(X{A,B})) o (id(X{A,B}) * eta_l(X{A,B}))",
             "--format", "records"})
            .out == "reduced=id(X{A,B})\n");
  CHECK(run({"diagram", "normalize", "X{A,"}).code == 2);
  CHECK(run({"diagram", "frob", "x"}).code == 2);
}

TEST_CASE("records output is byte-identical across runs") {
  EnvGuard env;
  std::vector<std::vector<std::string>> invocations = {
      {"coxeter", a2_path(), "--format", "records"},
      {"knit", a2_path(), "--format", "records"},
      {"trace-check", a2_path(), p1_path(), "--weight", "1,1", "--format",
       "records", "--seed", "99"},
      {"hrr", a2_path(), p1_path(), s1_path(), "--format", "records"},
  };
  for (const auto& argv : invocations) {
    RunResult first = run(argv);
    RunResult second = run(argv);
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);
    CHECK(first.err == second.err);
  }
}

TEST_CASE("environment variable selects the default format") {
  EnvGuard env;
  setenv("ARQUIVER_FORMAT", "records", 1);
  CHECK(run({"cartan", a2_path()}).out ==
        "n=2\ncartan.0=1,0\ncartan.1=1,1\n");
  // Explicit flag overrides the environment.
  CHECK(run({"cartan", a2_path(), "--format", "human"}).out.find("cartan:") !=
        std::string::npos);
  setenv("ARQUIVER_FORMAT", "purple", 1);
  CHECK(run({"cartan", a2_path()}).code == 2);
  unsetenv("ARQUIVER_FORMAT");
}
