#include <sys/wait.h>

#include <cstdio>
#include <fstream>

#include "decker/samples.hpp"
#include "doctest.h"

using namespace decker;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(DECKER_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void write(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

int count(const std::string& s, const std::string& what) {
  int n = 0;
  for (size_t p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

void samples_on_disk() {
  static bool done = false;
  if (done) return;
  done = true;
  write("cli_gon12.json", to_json(samples::gon12()));
  write("cli_gon12_rot.json", to_json(transform(samples::gon12(), Transform::rotation_z(Scalar(3, 5), Scalar(4, 5)))));
  write("cli_trefoil.json", to_json(samples::trefoil60()));
  write("cli_quad.json", to_json(samples::quadrisecant_knot(0)));
  write("cli_quad_a.json", to_json(samples::quadrisecant_knot(Scalar(-1, 10))));
  write("cli_quad_b.json", to_json(samples::quadrisecant_knot(Scalar(1, 10))));
  write("cli_birth_a.json", to_json(samples::cusp_birth_knot(0)));
  write("cli_birth_b.json", to_json(samples::cusp_birth_knot(1)));
  write("cli_square.json", R"({"closed": true, "vertices": [[0,0,0],[1,0,0],[1,1,0],[0,1,0]]})");
  write("cli_broken.json", "{\"closed\": true, \"vertices\": [[0,0");
}

}  // namespace

TEST_CASE("check") {
  samples_on_disk();
  Run g = run("check cli_gon12.json");
  CHECK(g.code == 0);
  CHECK(g.out.find("result: generic") != std::string::npos);

  Run s = run("check cli_square.json");
  CHECK(s.code == 1);
  CHECK(count(s.out, "horizontal edge") == 4);

  Run q = run("check cli_quad.json");
  CHECK(q.code == 1);
  CHECK(count(q.out, "quadrisecant:") == 1);

  Run j = run("check cli_quad.json --json");
  CHECK(j.code == 1);
  CHECK(j.out.find("\"quadrisecants\"") != std::string::npos);

  CHECK(run("check cli_broken.json").code == 2);
  CHECK(run("check no_such_file.json").code == 2);
}

TEST_CASE("diagram") {
  samples_on_disk();
  Run g = run("diagram cli_gon12.json --out cli_gon12_diagram.json");
  CHECK(g.code == 0);
  CHECK(g.out.find("counts {4, 0, 2, 0, 0, [0,0]}") != std::string::npos);
  CHECK(g.out.find("code ") != std::string::npos);

  Run t = run("diagram cli_trefoil.json");
  CHECK(t.code == 0);
  CHECK(t.out.find("counts {12, ") != std::string::npos);

  Run b = run("braid \"\" --strands 2 --tangle-out cli_trivial2.json");
  REQUIRE(b.code == 0);
  Run tb = run("diagram cli_trivial2.json");
  CHECK(tb.code == 0);
  CHECK(tb.out.find("counts {0, 0, 2, 0, 4, [0,0]}") != std::string::npos);

  Run q = run("diagram cli_quad.json");
  CHECK(q.code == 1);
}

TEST_CASE("compare") {
  samples_on_disk();
  CHECK(run("compare cli_gon12.json cli_gon12_rot.json").code == 0);
  CHECK(run("compare cli_gon12.json cli_trefoil.json").code == 1);
}

TEST_CASE("isotopy") {
  samples_on_disk();
  Run q = run("isotopy cli_quad_a.json cli_quad_b.json --out cli_events.json");
  CHECK(q.code == 0);
  CHECK(q.out.find("events: 1") != std::string::npos);
  CHECK(q.out.find("QuadrisecantCrossing t=1/2 tag=R7 confidence=paper-backed") != std::string::npos);
  std::ifstream ev("cli_events.json");
  CHECK(ev.good());

  Run r = run("isotopy cli_gon12.json cli_gon12_rot.json --resolution 8");
  CHECK(r.code == 0);
  CHECK(r.out.find("events: 0") != std::string::npos);

  Run c = run("isotopy cli_birth_a.json cli_birth_b.json --json");
  CHECK(c.code == 0);
  CHECK(c.out.find("\"CuspBirthDeath\"") != std::string::npos);

  CHECK(run("isotopy cli_gon12.json cli_trefoil.json").code == 1);
  CHECK(run("isotopy cli_gon12.json").code == 2);
  CHECK(run("isotopy cli_gon12.json cli_gon12_rot.json --resolution x").code == 2);
}

TEST_CASE("render") {
  samples_on_disk();
  REQUIRE(run("diagram cli_gon12.json --out cli_gon12_diagram.json").code == 0);
  Run r = run("render cli_gon12_diagram.json");
  CHECK(r.code == 0);
  CHECK(count(r.out, "<path") == 4);
  CHECK(count(r.out, "<circle") == 4);
  CHECK(run("render cli_gon12_diagram.json --out cli_gon12.svg --size 300").code == 0);
  CHECK(run("render cli_broken.json").code == 2);
  CHECK(run("render cli_gon12.json").code == 2);
}

TEST_CASE("braid") {
  Run b = run("braid \"s1 s2^-1\" --strands 3 --out cli_braid_diagram.json --tangle-out cli_braid_tangle.json");
  CHECK(b.code == 0);
  CHECK(b.out.find("permutation 3 1 2") != std::string::npos);
  CHECK(b.out.find("event word (2) a_{1,2,3}@") != std::string::npos);
  CHECK(run("check cli_braid_tangle.json").code == 0);

  Run s = run("braid s1 --strands 3 --json");
  CHECK(s.code == 0);
  CHECK(s.out.find("\"event_word\"") != std::string::npos);

  write("cli_word.txt", "s1 s1\n");
  Run f = run("braid cli_word.txt --strands 2");
  CHECK(f.code == 0);
  CHECK(f.out.find("word s1 s1 on 2 strands") != std::string::npos);

  CHECK(run("braid \"s1 q2\" --strands 3").code == 2);
  CHECK(run("braid s3 --strands 3").code == 2);
}

TEST_CASE("sample and stability") {
  Run s = run("sample figure8-64");
  CHECK(s.code == 0);
  CHECK(s.out.find("\"vertices\"") != std::string::npos);
  CHECK(run("sample nothing").code == 2);
  CHECK(run("sample quadrisecant --param 1/10 --out cli_q.json").code == 0);

  samples_on_disk();
  Run st = run("stability cli_gon12.json --trials 5 --seed 3");
  CHECK(st.code == 0);
  CHECK(st.out.find("unchanged 5/5") != std::string::npos);
  CHECK(run("stability cli_gon12.json --trials 2 --magnitude 1/1000000").code == 0);
  CHECK(run("stability cli_gon12.json --magnitude abc").code == 2);
  CHECK(run("stability cli_gon12.json --trials 0").code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("check").code == 2);
  CHECK(run("--help").code == 0);
}
