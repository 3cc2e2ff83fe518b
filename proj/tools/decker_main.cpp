#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "decker/braids.hpp"
#include "decker/isotopy.hpp"
#include "decker/render.hpp"
#include "decker/samples.hpp"
#include "json.hpp"

using namespace decker;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601;

// Unreadable or malformed input: exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::filesystem::path tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
    if (!out.flush()) throw InputError("cannot write " + path);
  }
  std::filesystem::rename(tmp, path);
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

template <class F>
auto parsing(const std::string& what, F f) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

KnotOrTangle load_knot_or_tangle(const std::string& path) {
  std::string text = read_file(path);
  return parsing(path, [&] { return parse_knot_document(text); });
}

PLKnot load_knot(const std::string& path) {
  KnotOrTangle k = load_knot_or_tangle(path);
  if (!std::holds_alternative<PLKnot>(k)) throw InputError(path + ": expected a closed knot, got a tangle");
  return std::get<PLKnot>(k);
}

Scalar rational_option(const std::string& text) {
  return parsing("bad rational '" + text + "'", [&] { return parse_scalar(text); });
}

std::string direction_text(const Direction& d) { return "(" + d.dx().str() + ", " + d.dy().str() + ")"; }

std::string edges_text(const auto& edges) {
  std::string s;
  for (int e : edges) s += (s.empty() ? "" : " ") + std::to_string(e);
  return s;
}

json invariants_json(const DiagramInvariants& inv) {
  return {{"cusps", inv.cusp_count},
          {"triples", inv.triple_count},
          {"curves", inv.curve_count},
          {"closed_curves", inv.closed_curve_count},
          {"boundary_ends", inv.boundary_end_count},
          {"crossing_lengths", inv.crossing_lengths}};
}

// ------------------------------------------------------------------ check

int cmd_check(const std::string& path, bool as_json) {
  KnotOrTangle src = load_knot_or_tangle(path);
  GeometryReport g = std::visit([](const auto& x) { return validate_geometry(x); }, src);
  json j;
  j["geometry"] = json::array();
  for (const auto& v : g.violations)
    j["geometry"].push_back({{"kind", to_string(v.kind)}, {"where", v.where}, {"message", v.message}});
  std::ostringstream text;
  text << "geometry: " << (g.ok() ? "ok" : std::to_string(g.violations.size()) + " violation(s)") << "\n";
  for (const auto& v : g.violations) text << "  " << v.message << "\n";

  bool generic = g.ok();
  if (g.ok()) {
    EdgeComplex k = std::visit([](const auto& x) { return EdgeComplex(x); }, src);
    SecantAnalysis an = analyze_secants(k);
    const auto& r = an.report;
    generic = r.ok();
    json gp;
    gp["quadrisecants"] = json::array();
    for (const auto& q : r.quadrisecants)
      gp["quadrisecants"].push_back(
          {{"edges", q.edges}, {"height", q.height.str()}, {"direction", {q.direction.dx().str(), q.direction.dy().str()}}});
    auto tangencies = [](const std::vector<Tangency>& ts) {
      json a = json::array();
      for (const auto& t : ts) a.push_back({{"edges", t.edges}, {"height", t.height.str()}});
      return a;
    };
    gp["tangential_trisecants"] = tangencies(r.tangential);
    gp["trisecants_through_vertex"] = tangencies(r.through_vertex);
    gp["identically_collinear"] = r.identically_collinear;
    j["general_position"] = gp;
    j["trisecant_events"] = an.events.size();

    text << "general position: " << (r.ok() ? "ok" : "violated") << "\n";
    for (const auto& q : r.quadrisecants)
      text << "  quadrisecant: edges " << edges_text(q.edges) << " at height " << q.height.str() << " direction "
           << direction_text(q.direction) << "\n";
    for (const auto& t : r.tangential)
      text << "  tangential trisecant: edges " << edges_text(t.edges) << " at height " << t.height.str() << "\n";
    for (const auto& t : r.through_vertex)
      text << "  trisecant through vertex: edges " << edges_text(t.edges) << " at height " << t.height.str() << "\n";
    for (const auto& t : r.identically_collinear)
      text << "  identically collinear: edges " << edges_text(t) << "\n";
    text << "trisecant events: " << an.events.size() << "\n";
  }
  j["generic"] = generic;
  text << "result: " << (generic ? "generic" : "not generic") << "\n";
  std::cout << (as_json ? j.dump(1) + "\n" : text.str());
  return generic ? 0 : 1;
}

// ---------------------------------------------------------------- diagram

void print_summary(const AbstractDiagram& d) {
  std::cout << "counts " << to_string(diagram_invariants(d)) << "\n";
  std::cout << "code " << canonical_code(d).hex() << "\n";
}

int cmd_diagram(const std::string& path, const std::string& out, bool as_json) {
  KnotOrTangle src = load_knot_or_tangle(path);
  AbstractDiagram d = assemble_diagram(src);
  std::string doc = to_json(d);
  if (as_json) {
    std::cout << doc;
    if (!out.empty()) write_file(out, doc);
    return 0;
  }
  if (!out.empty()) write_file(out, doc);
  print_summary(d);
  return 0;
}

// ---------------------------------------------------------------- compare

int cmd_compare(const std::string& a, const std::string& b) {
  CanonicalCode ca = canonical_code(assemble_diagram(load_knot_or_tangle(a)));
  CanonicalCode cb = canonical_code(assemble_diagram(load_knot_or_tangle(b)));
  bool same = ca == cb;
  std::cout << "code A " << ca.hex() << "\ncode B " << cb.hex() << "\n" << (same ? "same" : "different") << "\n";
  return same ? 0 : 1;
}

// ---------------------------------------------------------------- isotopy

int cmd_isotopy(const std::string& a, const std::string& b, int resolution, const std::string& out, bool as_json) {
  KnotFamily f(load_knot(a), load_knot(b));
  ScanOptions opt;
  opt.resolution = resolution;
  std::vector<IsotopyEvent> events;
  try {
    events = scan_events(f, opt);
  } catch (const ResolutionTooCoarse& e) {
    std::cerr << "error: " << e.what() << "\n"
              << "hint: rerun with a larger --resolution (currently " << resolution << ")\n";
    return 1;
  }
  std::string doc = events_to_json(events);
  if (!out.empty()) write_file(out, doc);
  if (as_json) {
    std::cout << doc;
    return 0;
  }
  std::cout << "events: " << events.size() << "\n";
  for (size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    std::string t = e.t_exact ? e.t_exact->get_str() : "[" + e.t_lo.get_str() + ", " + e.t_hi.get_str() + "]";
    std::cout << "  " << i << ": " << to_string(e.kind) << " t=" << t
              << " tag=" << (e.roseman_tag.empty() ? "-" : e.roseman_tag) << " confidence=" << to_string(e.confidence);
    if (e.cusp_delta != 0) std::cout << " cusp_delta=" << e.cusp_delta;
    if (e.kind == EventKind::QuadrisecantCrossing) std::cout << " order_reversed=" << (e.order_reversed ? 1 : 0);
    std::cout << "\n";
    for (const auto& w : e.witnesses)
      if (w.direction) std::cout << "      witness direction " << direction_text(*w.direction) << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- render

int cmd_render(const std::string& path, const std::string& out, const RenderOptions& opt) {
  std::string text = read_file(path);
  AbstractDiagram d = parsing(path, [&] { return parse_diagram(text); });
  std::string svg = parsing(path, [&] { return render_svg(d, opt); });
  emit(out, svg);
  return 0;
}

// ------------------------------------------------------------------ braid

int cmd_braid(const std::string& word_arg, int strands, const std::string& out, const std::string& tangle_out,
              bool as_json) {
  std::string text = word_arg;
  if (std::filesystem::is_regular_file(word_arg)) text = read_file(word_arg);
  BraidWord w = parsing("braid word", [&] { return BraidWord::parse(text, strands); });
  PLTangle t = braid_to_tangle(w);
  AbstractDiagram d = alpha_tangle(t);
  EventWord ew = collinearity_word(t);
  if (!tangle_out.empty()) write_file(tangle_out, to_json(t));
  if (!out.empty()) write_file(out, to_json(d));
  std::vector<int> perm = w.permutation();
  for (auto& p : perm) ++p;
  if (as_json) {
    json j;
    j["word"] = w.str();
    j["strands"] = strands;
    j["permutation"] = perm;
    j["tangle"] = json::parse(to_json(t));
    json tokens = json::array();
    std::istringstream in(ew.str());
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    j["event_word"] = tokens;
    j["invariants"] = invariants_json(diagram_invariants(d));
    j["canonical_code"] = canonical_code(d).hex();
    std::cout << j.dump(1) << "\n";
    return 0;
  }
  std::cout << "word " << (w.letters.empty() ? "(trivial)" : w.str()) << " on " << strands << " strands\n";
  std::cout << "permutation";
  for (int p : perm) std::cout << ' ' << p;
  std::cout << "\nevent word (" << ew.letters.size() << ") " << ew.str() << "\n";
  print_summary(d);
  return 0;
}

// ----------------------------------------------------------------- sample

int cmd_sample(const std::string& name, const std::string& param, std::uint64_t seed, const std::string& out) {
  PLKnot k;
  if (name == "random") {
    std::uint64_t used = 0;
    k = samples::random_generic_knot(seed, &used);
    std::cerr << "seed " << used << "\n";
  } else if (!param.empty() && name == "quadrisecant") {
    k = samples::quadrisecant_knot(rational_option(param));
  } else if (!param.empty() && name == "cusp-birth") {
    k = samples::cusp_birth_knot(rational_option(param));
  } else {
    k = parsing("sample", [&] { return samples::by_name(name); });
  }
  emit(out, to_json(k));
  return 0;
}

// -------------------------------------------------------------- stability

int cmd_stability(const std::string& path, int trials, std::uint64_t seed, const std::string& magnitude,
                  int resolution, bool as_json) {
  PLKnot k = load_knot(path);
  std::optional<Scalar> mag;
  if (!magnitude.empty()) mag = rational_option(magnitude);
  StabilityReport rep = perturb_stability(k, mag, trials, seed);
  json changed = json::array();
  std::ostringstream text;
  text << "unchanged " << rep.unchanged << "/" << rep.trials << "\n";
  for (const auto& c : rep.changed) {
    ScanOptions opt;
    opt.resolution = resolution;
    std::string status;
    size_t n = 0;
    try {
      n = scan_events(KnotFamily(k, c.perturbed), opt).size();
      status = std::to_string(n) + " event(s)";
    } catch (const std::exception& e) {
      status = std::string("scan failed: ") + e.what();
    }
    changed.push_back({{"trial", c.trial}, {"seed", c.seed}, {"scan", status}});
    text << "  trial " << c.trial << " seed " << c.seed << ": " << status << "\n";
  }
  if (as_json) {
    json j{{"trials", rep.trials}, {"unchanged", rep.unchanged}, {"seed", seed}, {"changed", changed}};
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << text.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double decker diagrams of piecewise-linear knots"};
  app.require_subcommand(1);

  std::string in, in2, out, tangle_out, magnitude, param, word;
  bool as_json = false;
  int resolution = 16, trials = 100, strands = 2;
  std::uint64_t seed = kDefaultSeed;
  RenderOptions ropt;

  auto json_flag = [&](CLI::App* c) { c->add_flag("--json", as_json, "Print JSON instead of text"); };
  auto out_opt = [&](CLI::App* c) { c->add_option("--out", out, "Output path"); };

  auto* check = app.add_subcommand("check", "Validate geometry and general position");
  check->add_option("knot", in, "Knot or tangle file")->required();
  json_flag(check);

  auto* diagram = app.add_subcommand("diagram", "Assemble the double decker diagram");
  diagram->add_option("knot", in, "Knot or tangle file")->required();
  out_opt(diagram);
  json_flag(diagram);

  auto* compare = app.add_subcommand("compare", "Compare canonical codes of two knots");
  compare->add_option("a", in, "First knot file")->required();
  compare->add_option("b", in2, "Second knot file")->required();

  auto* isotopy = app.add_subcommand("isotopy", "Scan the straight-line family between two knots");
  isotopy->add_option("a", in, "Knot at t = 0")->required();
  isotopy->add_option("b", in2, "Knot at t = 1")->required();
  isotopy->add_option("--resolution", resolution, "Sample count on [0, 1]")->check(CLI::PositiveNumber);
  out_opt(isotopy);
  json_flag(isotopy);

  auto* render = app.add_subcommand("render", "Render a diagram file as SVG");
  render->add_option("diagram", in, "Diagram file")->required();
  render->add_option("--size", ropt.size, "Chart side in pixels")->check(CLI::PositiveNumber);
  render->add_option("--over-color", ropt.over_color, "Over strand color");
  render->add_option("--under-color", ropt.under_color, "Under strand color");
  out_opt(render);

  auto* braid = app.add_subcommand("braid", "Build the tangle of a braid word and its diagram");
  braid->add_option("word", word, "Braid word such as 's1 s2^-1', or a file containing one")->required();
  braid->add_option("--strands", strands, "Strand count")->check(CLI::PositiveNumber);
  braid->add_option("--tangle-out", tangle_out, "Write the tangle file here");
  out_opt(braid);
  json_flag(braid);

  auto* sample = app.add_subcommand("sample", "Write a built-in sample knot");
  sample->add_option("name", in, "gon12, trefoil60, figure8-64, quadrisecant, cusp-birth or random")->required();
  sample->add_option("--param", param, "Shift (quadrisecant) or lift (cusp-birth), rational");
  sample->add_option("--seed", seed, "Seed for random");
  out_opt(sample);

  auto* stability = app.add_subcommand("stability", "Perturbation stability of the canonical code");
  stability->add_option("knot", in, "Knot file")->required();
  stability->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  stability->add_option("--seed", seed, "Seed of the first trial");
  stability->add_option("--magnitude", magnitude, "Perturbation bound, rational");
  stability->add_option("--resolution", resolution, "Sample count for scanning changed trials")
      ->check(CLI::PositiveNumber);
  json_flag(stability);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(in, as_json);
    if (*diagram) return cmd_diagram(in, out, as_json);
    if (*compare) return cmd_compare(in, in2);
    if (*isotopy) return cmd_isotopy(in, in2, resolution, out, as_json);
    if (*render) return cmd_render(in, out, ropt);
    if (*braid) return cmd_braid(word, strands, out, tangle_out, as_json);
    if (*sample) return cmd_sample(in, param, seed, out);
    if (*stability) return cmd_stability(in, trials, seed, magnitude, resolution, as_json);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
