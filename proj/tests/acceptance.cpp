// Acceptance criteria A1-A9: one PASS/FAIL line each; exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "decker/braids.hpp"
#include "decker/isotopy.hpp"
#include "decker/samples.hpp"
#include "oracles.hpp"

using namespace decker;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Corpus {
  std::vector<PLKnot> knots;
  std::vector<std::uint64_t> seeds;
  std::vector<AbstractDiagram> diagrams;
};

const Corpus& corpus() {
  static const Corpus c = [] {
    Corpus out;
    std::uint64_t next = 1;
    while (out.knots.size() < 50) {
      std::uint64_t used = 0;
      PLKnot k = samples::random_generic_knot(next, &used);
      next = used + 1;
      out.knots.push_back(k);
      out.seeds.push_back(used);
      out.diagrams.push_back(assemble_diagram(k));
    }
    return out;
  }();
  return c;
}

Outcome a1() {
  const Corpus& c = corpus();
  int bad = 0;
  std::string first;
  for (size_t i = 0; i < c.knots.size(); ++i) {
    int n = static_cast<int>(c.knots[i].vertices.size());
    AxiomReport r = verify_decker_axioms(c.diagrams[i]);
    if (n < 8 || n > 32 || !r.ok() || r.checks.size() != 6) {
      ++bad;
      for (const auto& ch : r.checks)
        if (!ch.passed && first.empty()) first = "seed " + std::to_string(c.seeds[i]) + ": " + ch.name;
    }
  }
  return {bad == 0, std::to_string(c.knots.size() - static_cast<size_t>(bad)) + "/50 knots pass all six checks" +
                        (first.empty() ? "" : "; first failure " + first)};
}

Outcome a2() {
  const Corpus& c = corpus();
  int bad = 0;
  for (size_t i = 0; i < c.knots.size(); ++i)
    if (c.diagrams[i].cusps.size() != 2 * z_extrema(c.knots[i]).size()) ++bad;
  return {bad == 0, std::to_string(50 - bad) + "/50 knots with cusps = 2 x extrema"};
}

Outcome a3() {
  Outcome o;
  std::ostringstream d;
  for (auto [name, k] : {std::pair{"trefoil-60", samples::trefoil60()}, {"figure-eight-64", samples::figure8_64()}}) {
    auto an = analyze_secants(EdgeComplex(k));
    AbstractDiagram diag = assemble_diagram(KnotOrTangle(k), an);
    std::vector<oracle::ExactRoot> roots;
    for (const auto& e : an.events) roots.push_back({e.edges, e.height.to_double()});
    auto m = oracle::match_roots(roots, oracle::sweep_trisecants(k, 10000));
    bool ok = diag.triples.size() == 2 * an.events.size() && m.missed == 0 && m.spurious == 0;
    o.pass = o.pass && ok;
    d << name << ": " << an.events.size() << " trisecants, " << diag.triples.size() << " triple nodes, missed "
      << m.missed << ", spurious " << m.spurious << "; ";
  }
  const Corpus& c = corpus();
  int bad = 0;
  for (size_t i = 0; i < c.knots.size(); ++i)
    if (c.diagrams[i].triples.size() != 2 * analyze_secants(EdgeComplex(c.knots[i])).events.size()) ++bad;
  o.pass = o.pass && bad == 0;
  d << "doubling holds on " << 50 - bad << "/50 random knots";
  o.detail = d.str();
  return o;
}

Outcome a4() {
  const Corpus& c = corpus();
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> coord(-1000, 1000);
  int checked = 0, bad = 0, redrawn = 0;
  for (size_t i = 0; i < 10; ++i) {
    int done = 0;
    while (done < 32) {
      int a = coord(rng), b = coord(rng);
      if (a == 0 && b == 0) continue;
      Direction phi{Algebraic(a), Algebraic(b)};
      int points = 0;
      try {
        points = strand_points_at(c.diagrams[i], phi);
      } catch (const DegenerateDirection&) {
        ++redrawn;
        continue;
      }
      if (points != 2 * oracle::projection_crossings(c.knots[i], a, b)) ++bad;
      ++checked;
      ++done;
    }
  }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " directions agree (" +
                        std::to_string(redrawn) + " degenerate draws replaced)"};
}

Outcome a5() {
  const Corpus& c = corpus();
  const std::pair<const char*, std::function<PLKnot(const PLKnot&)>> moves[] = {
      {"z-translation", [](const PLKnot& k) { return transform(k, Transform::translation({0, 0, Scalar(17, 3)})); }},
      {"scaling by 3", [](const PLKnot& k) { return transform(k, Transform::scaling(3)); }},
      {"(3,4,5) rotation",
       [](const PLKnot& k) { return transform(k, Transform::rotation_z(Scalar(3, 5), Scalar(4, 5))); }},
      {"cyclic relabeling",
       [](const PLKnot& k) { return rotate_start(k, static_cast<int>(k.vertices.size()) / 3 + 1); }},
  };
  int bad = 0;
  std::string first;
  for (size_t i = 0; i < c.knots.size(); ++i) {
    CanonicalCode base = canonical_code(c.diagrams[i]);
    for (const auto& [name, f] : moves) {
      bool same = false;
      try {
        same = canonical_code(assemble_diagram(f(c.knots[i]))) == base;
      } catch (const std::exception&) {
      }
      if (!same) {
        ++bad;
        if (first.empty()) first = std::string(name) + " on seed " + std::to_string(c.seeds[i]);
      }
    }
  }
  return {bad == 0, std::to_string(200 - bad) + "/200 transformed codes unchanged" +
                        (first.empty() ? "" : "; first change " + first)};
}

Outcome a6() {
  PLKnot k = samples::trefoil60();
  StabilityReport r = perturb_stability(k, std::nullopt, 100, 12345);
  int bracketed = 0;
  for (const auto& w : r.changed) {
    try {
      if (!scan_events(KnotFamily(k, w.perturbed)).empty()) ++bracketed;
    } catch (const std::exception&) {
    }
  }
  bool ok = r.unchanged >= 95 && bracketed == static_cast<int>(r.changed.size());
  return {ok, std::to_string(r.unchanged) + "/100 unchanged; " + std::to_string(bracketed) + "/" +
                  std::to_string(r.changed.size()) + " changed trials bracket an event"};
}

Outcome a7() {
  KnotFamily f(samples::quadrisecant_knot(Scalar(-1, 10)), samples::quadrisecant_knot(Scalar(1, 10)));
  auto ev = scan_events(f);
  int quads = 0;
  for (const auto& e : ev)
    if (e.kind == EventKind::QuadrisecantCrossing) ++quads;
  if (ev.size() != 1 || quads != 1) return {false, std::to_string(ev.size()) + " events, " + std::to_string(quads) + " quadrisecant"};
  const auto& e = ev[0];
  Direction east{Algebraic(1), Algebraic(0)};
  bool t_ok = e.t_exact && *e.t_exact == Scalar(1, 2);
  bool w_ok = e.witnesses.size() == 2 && e.witnesses[0].direction && e.witnesses[1].direction &&
              *e.witnesses[0].direction == east && *e.witnesses[1].direction == east.antipode();
  bool tag_ok = e.roseman_tag == "R7" && e.confidence == Confidence::PaperBacked;
  bool ok = t_ok && w_ok && tag_ok && e.order_reversed;
  std::ostringstream d;
  d << "t* = " << (e.t_exact ? e.t_exact->get_str() : "?") << ", witnesses "
    << (w_ok ? "(1,0) and (-1,0)" : "wrong") << ", tag " << e.roseman_tag << " " << to_string(e.confidence)
    << ", order reversed " << (e.order_reversed ? "yes" : "no");
  return {ok, d.str()};
}

Outcome a8() {
  std::mt19937 rng(8);
  int bad = 0;
  std::string first;
  for (int trial = 0; trial < 20; ++trial) {
    int n = trial < 10 ? 3 : 4;
    auto draw = [&] {
      BraidWord w;
      w.strands = n;
      int len = std::uniform_int_distribution<int>(0, 8)(rng);
      for (int i = 0; i < len; ++i)
        w.letters.push_back({std::uniform_int_distribution<int>(1, n - 1)(rng), rng() % 2 ? 1 : -1});
      return w;
    };
    BraidWord w1 = draw(), w2 = draw();
    PLTangle t1 = braid_to_tangle(w1), t2 = braid_to_tangle(w2), t12 = braid_to_tangle(w1 * w2);
    EventWord e1 = collinearity_word(t1), e2 = collinearity_word(t2), e12 = collinearity_word(t12);
    bool ok = e12 == concat(e1, restack(e2, Scalar(static_cast<long>(w1.letters.size())), w1.permutation()));
    for (auto [t, e] : {std::pair{&t1, &e1}, {&t2, &e2}, {&t12, &e12}})
      ok = ok && alpha_tangle(*t).triples.size() == 2 * e->letters.size();
    ok = ok && boundary_directions(alpha_tangle(t1), 1) == boundary_directions(alpha_tangle(t2), 0);
    if (!ok) {
      ++bad;
      if (first.empty()) first = w1.str() + " | " + w2.str();
    }
  }
  return {bad == 0, std::to_string(20 - bad) + "/20 products natural" + (first.empty() ? "" : "; first failure " + first)};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// stdout, exit code and every named output file of one invocation
std::string capture(const std::string& args, const std::vector<std::string>& files) {
  for (const auto& f : files) std::remove(f.c_str());
  std::string cmd = std::string(DECKER_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "popen failed";
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  out += "\nexit " + std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) + "\n";
  for (const auto& f : files) out += "--- " + f + "\n" + slurp(f);
  return out;
}

Outcome a9() {
  std::ofstream("acc_gon12.json") << to_json(samples::gon12());
  std::ofstream("acc_trefoil.json") << to_json(samples::trefoil60());
  std::ofstream("acc_quad.json") << to_json(samples::quadrisecant_knot(0));
  std::ofstream("acc_quad_a.json") << to_json(samples::quadrisecant_knot(Scalar(-1, 10)));
  std::ofstream("acc_quad_b.json") << to_json(samples::quadrisecant_knot(Scalar(1, 10)));
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
      {"check acc_trefoil.json", {}},
      {"check acc_quad.json --json", {}},
      {"diagram acc_trefoil.json --out acc_trefoil_diagram.json", {"acc_trefoil_diagram.json"}},
      {"diagram acc_gon12.json --json", {}},
      {"compare acc_gon12.json acc_trefoil.json", {}},
      {"isotopy acc_quad_a.json acc_quad_b.json --out acc_events.json", {"acc_events.json"}},
      {"render acc_trefoil_diagram.json --out acc_trefoil.svg", {"acc_trefoil.svg"}},
      {"braid \"s1 s2^-1 s3 s2\" --strands 4 --out acc_braid.json --tangle-out acc_tangle.json",
       {"acc_braid.json", "acc_tangle.json"}},
      {"braid \"s1 s2\" --strands 3 --json", {}},
      {"sample random --seed 77 --out acc_random.json", {"acc_random.json"}},
      {"stability acc_gon12.json --trials 10 --json", {}},
      {"stability acc_trefoil.json --trials 3 --seed 5 --magnitude 1/1000", {}},
  };
  int same = 0;
  std::string first;
  for (const auto& [args, files] : commands) {
    std::string a = capture(args, files), b = capture(args, files);
    if (a == b)
      ++same;
    else if (first.empty())
      first = args;
  }
  // the render input must be reproducible too
  std::string r1 = slurp("acc_trefoil_diagram.json");
  bool ok = same == static_cast<int>(commands.size()) && !r1.empty();
  return {ok, std::to_string(same) + "/" + std::to_string(commands.size()) + " commands byte-identical across two runs" +
                  (first.empty() ? "" : "; first difference: " + first)};
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"A1 decker axioms on 50 random knots", a1},
      {"A2 cusp formula", a2},
      {"A3 triple/trisecant doubling and sweep oracle", a3},
      {"A4 strand points vs projection crossings", a4},
      {"A5 canonical code symmetry invariance", a5},
      {"A6 perturbation stability", a6},
      {"A7 quadrisecant crossing is an antipodal R7 pair", a7},
      {"A8 braid naturality", a8},
      {"A9 CLI determinism", a9},
  };
  bool all = true;
  for (const auto& [name, fn] : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char t[32];
    std::snprintf(t, sizeof t, "%.1fs", secs);
    std::string n = name;
    size_t sp = n.find(' ');
    std::cout << n.substr(0, sp) << (o.pass ? " PASS: " : " FAIL: ") << n.substr(sp + 1) << " -- " << o.detail << " ["
              << t << "]" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
