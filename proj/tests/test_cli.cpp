#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <unirat/parse.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Run run(const std::vector<std::string>& args) {
  std::string cmd = UNIRAT_CLI;
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>&1";
  Run r{0, ""};
  FILE* p = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

const std::string kGens = "-y^2*x - y^4 + 2*x + 2*y^2 - 1,4*y^4 - 10*y^2 + 5 + 3*y^2*x - 6*x";

}  // namespace

TEST(Cli, TrdegOfVariable) {
  auto r = run({"trdeg", "--vars", "x", "--gens", "x"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("trdeg          1\n"), std::string::npos) << r.out;
}

TEST(Cli, SubfieldsRunningExample) {
  auto r = run({"subfields", "--vars", "x,y", "--gens", kGens});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("proper_fields     1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("[proper, degree 2]: Q(-x*y^2 + 2*x - y^4 + 2*y^2 - 1, 3*x*y^2 - 6*x + 4*y^4 - 10*y^2 + 5, -y^2)"),
            std::string::npos)
      << r.out;
}

TEST(Cli, SepbasisRelationsUseUppercaseNames) {
  auto r = run({"sepbasis", "--vars", "x,y,z", "--relations", "X^2+Y^2", "--gens", "(x+2*y-z)^3,(x+2*y-z)^2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("rank                 2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("{x} {y}"), std::string::npos) << r.out;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"degree", "--vars", "x,y", "--gens", "x+y"}).code, 2);
  EXPECT_EQ(run({"minpoly", "--vars", "x,y", "--gens", "x", "--element", "y"}).code, 2);
  EXPECT_EQ(run({"subfields", "--vars", "x", "--gens", "(x^3 + x)^2", "--max-subsets", "4"}).code, 3);
  EXPECT_EQ(run({"trdeg", "--vars", "x", "--gens", "x^"}).code, 4);
  EXPECT_EQ(run({"trdeg", "--vars", "x", "--gens", "y"}).code, 4);
  EXPECT_EQ(run({"subfields", "--vars", "x", "--gens", "x^2", "--prime", "7"}).code, 1);
  EXPECT_EQ(run({"nonsense"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ErrorsGoToStderrWithCode) {
  auto r = run({"degree", "--vars", "x,y", "--gens", "x+y"});
  EXPECT_EQ(r.out.rfind("error: NOT_ALGEBRAIC: ", 0), 0u) << r.out;
}

TEST(Cli, DotOutput) {
  auto r = run({"subfields", "--vars", "x", "--gens", "x^4", "--dot"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "digraph lattice {\n  f0 [label=\"Q(x^4, x^4)\"];\n  f1 [label=\"Q(x^4, -x^2)\"];\n"
                   "  f2 [label=\"Q(x^4, x)\"];\n  f0 -> f1;\n  f1 -> f2;\n}\n");
}

TEST(Cli, TimingsOnlyOnRequest) {
  auto plain = run({"trdeg", "--vars", "x", "--gens", "x^2", "--json"});
  EXPECT_EQ(plain.out.find("timings"), std::string::npos);
  auto timed = run({"trdeg", "--vars", "x", "--gens", "x^2", "--json", "--timings"});
  EXPECT_NE(timed.out.find("\"total_ms\""), std::string::npos);
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args{"factor-ext", "--vars", "x,y", "--gens", "x^2,y^2", "--json"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, GeneratorsInSeparateFlags) {
  auto a = run({"degree", "--vars", "x,y", "--gens", kGens});
  auto b = run({"degree", "--vars", "x", "--vars", "y", "--gens", "-y^2*x - y^4 + 2*x + 2*y^2 - 1", "--gens",
                "4*y^4 - 10*y^2 + 5 + 3*y^2*x - 6*x"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("degree  4\n"), std::string::npos) << a.out;
}
