#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lwheel/audit.hpp"
#include "lwheel/detectors.hpp"
#include "lwheel/errors.hpp"
#include "lwheel/generate.hpp"
#include "lwheel/io.hpp"
#include "lwheel/width.hpp"

namespace lwheel {
namespace {

using ojson = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << data)) throw UsageError("cannot write '" + path + "'");
}

// "json" means a wheel file; everything else is a bare graph.
std::string infer_format(const std::string& path, const std::string& given) {
  if (!given.empty() && given != "auto") return given;
  const std::string ext = std::filesystem::path(path).extension().string();
  if (ext == ".json") return "json";
  if (ext == ".g6") return "graph6";
  if (ext == ".dimacs" || ext == ".col") return "dimacs";
  if (ext == ".edges" || ext == ".el" || ext == ".txt") return "edgelist";
  if (ext == ".dot" || ext == ".gv") return "dot";
  throw UsageError("cannot infer the format of '" + path + "'; pass --format");
}

struct Loaded {
  std::optional<LayeredWheel> wheel;
  Graph graph;
  std::vector<std::string> mismatches;
};

Loaded load(const std::string& path, const std::string& format) {
  const std::string text = read_file(path);
  const std::string fmt = infer_format(path, format);
  Loaded out;
  if (fmt == "json") {
    WheelImport imp = import_wheel_json(text);
    out.graph = imp.wheel.graph();
    out.mismatches = std::move(imp.mismatches);
    out.wheel = std::move(imp.wheel);
  } else {
    out.graph = import_graph(text, graph_format_from_string(fmt));
  }
  return out;
}

LayeredWheel load_wheel(const std::string& path) {
  Loaded l = load(path, "json");
  if (!l.mismatches.empty()) throw UsageError("wheel metadata does not match its graph: " + l.mismatches.front());
  return std::move(*l.wheel);
}

ojson parsed(const std::string& s) { return ojson::parse(s); }

// --- generate ----------------------------------------------------------------

struct GenerateOpts {
  std::string flavor = "ttf";
  std::size_t l = 2;
  std::size_t k = 4;
  std::string policy = "minimal";
  std::size_t m = 0;
  bool has_m = false;
  std::string variant;
  std::string out;
  std::string format = "json";
};

int cmd_generate(const GenerateOpts& o, std::ostream& out, std::ostream& err) {
  if (o.has_m != (o.policy == "uniform")) throw UsageError("--m is required with --policy uniform and only allowed there");
  Flavor flavor = flavor_from_string(o.flavor);
  if (!o.variant.empty()) {
    if (flavor == Flavor::ttf) throw UsageError("--variant applies to ehf wheels only");
    if (o.variant == "pyramid") flavor = Flavor::ehf_pyramid;
    if (o.variant == "standard" && flavor == Flavor::ehf_pyramid)
      throw UsageError("--variant standard contradicts --flavor ehf_pyramid_variant");
  }
  const LengthPolicy policy = o.policy == "minimal"   ? LengthPolicy::minimal()
                              : o.policy == "special" ? LengthPolicy::special()
                                                      : LengthPolicy::uniform(o.m);
  LayeredWheel w = flavor == Flavor::ttf
                       ? generate_ttf(o.l, o.k, policy)
                       : generate_ehf(o.l, o.k, policy,
                                      flavor == Flavor::ehf_pyramid ? EhfVariant::pyramid : EhfVariant::standard);

  std::string artifact;
  if (o.format == "json")
    artifact = wheel_to_json(w);
  else if (o.format == "dot")
    artifact = wheel_to_dot(w);
  else
    artifact = export_graph(w.graph(), graph_format_from_string(o.format));

  std::ostringstream summary;
  summary << "flavor: " << to_string(w.flavor()) << "\n"
          << "l: " << w.l() << "  k: " << w.k() << "  policy: " << to_string(w.policy().mode);
  if (w.policy().mode == LengthPolicy::Mode::uniform) summary << " m=" << w.policy().m;
  summary << "\n|V| = " << w.graph().order() << "\n|E| = " << w.graph().size() << "\n";
  for (std::size_t i = 0; i < w.layers().size(); ++i) summary << "|P_" << i << "| = " << w.layer(i).size() << "\n";

  if (o.out.empty()) {
    out << artifact;
    err << summary.str();
  } else {
    write_file(o.out, artifact);
    out << summary.str();
  }
  return kExitOk;
}

// --- audit -------------------------------------------------------------------

void print_report(std::ostream& out, const std::string& name, const AuditReport& r) {
  out << name << ": " << (r.clean() ? "clean" : std::to_string(r.violations.size()) + " violation(s)") << "\n";
  for (const auto& v : r.violations) out << "  " << v.code << ": " << v.message << "\n";
}

int cmd_audit(const std::string& input, bool json, std::ostream& out) {
  Loaded in = load(input, "json");
  const LayeredWheel& w = *in.wheel;
  const AuditReport axioms = validate_axioms(w);
  std::optional<AuditReport> parity;
  if (is_ehf(w.flavor())) parity = parity_audit(w);
  const UniformityReport uni = uniformity_audit(w);
  const bool clean = in.mismatches.empty() && axioms.clean() && (!parity || parity->clean());

  if (json) {
    ojson j;
    j["metadata_mismatches"] = in.mismatches;
    j["axioms"] = parsed(to_json(axioms));
    j["parity"] = parity ? parsed(to_json(*parity)) : ojson(nullptr);
    j["uniformity"] = {{"special", uni.special},
                       {"uniform_m", uni.uniform_m ? ojson(*uni.uniform_m) : ojson(nullptr)},
                       {"neighbor_growth_ok", uni.neighbor_growth_ok}};
    j["clean"] = clean;
    out << j.dump(2) << "\n";
  } else {
    out << "wheel: " << to_string(w.flavor()) << " l=" << w.l() << " k=" << w.k() << "\n";
    if (!in.mismatches.empty()) {
      out << "metadata: " << in.mismatches.size() << " mismatch(es)\n";
      for (const auto& m : in.mismatches) out << "  " << m << "\n";
    }
    print_report(out, "axioms", axioms);
    if (parity)
      print_report(out, "parity", *parity);
    else
      out << "parity: n/a (ttf)\n";
    out << "uniformity: special=" << (uni.special ? "yes" : "no")
        << " uniform_m=" << (uni.uniform_m ? std::to_string(*uni.uniform_m) : "none")
        << " neighbor_growth=" << (uni.neighbor_growth_ok ? "ok" : "violated") << "\n";
  }
  return clean ? kExitOk : kExitFound;
}

// --- detect ------------------------------------------------------------------

struct DetectOpts {
  std::string input;
  std::string format = "auto";
  std::string pattern;
  std::size_t budget = 0;
  std::size_t deadline_ms = 0;
  std::size_t max_results = 0;
  std::size_t max_len = 0;
  bool json = false;
};

void print_witness(std::ostream& out, const Witness& w) {
  out << "witness (" << to_string(w.kind) << "):\n";
  for (const auto& [name, vs] : w.roles) {
    out << "  " << name << ":";
    for (Vertex v : vs) out << " " << v;
    out << "\n";
  }
}

int cmd_detect(const DetectOpts& o, std::ostream& out) {
  const Loaded in = load(o.input, o.format);
  Budget b;
  if (o.budget) b.max_nodes_expanded = o.budget;
  if (o.max_results) b.max_results = o.max_results;
  if (o.deadline_ms) b.deadline = std::chrono::milliseconds(o.deadline_ms);

  if (o.pattern == "hole" || o.pattern == "even-hole") {
    HoleQuery q;
    if (o.max_len) q.max_len = o.max_len;
    q.stop_at_even = o.pattern == "even-hole";
    const HoleReport r = enumerate_holes(in.graph, q, b);
    const Tri present = o.pattern == "even-hole"
                            ? r.has_even_hole
                            : (r.holes_found > 0 ? Tri::yes : (r.complete ? Tri::no : Tri::unknown));
    if (o.json) {
      ojson j = parsed(to_json(r));
      j["pattern"] = o.pattern;
      j["present"] = to_string(present);
      out << j.dump(2) << "\n";
    } else {
      out << "pattern: " << o.pattern << "\n"
          << "present: " << to_string(present) << "\n"
          << "complete: " << (r.complete ? "true" : "false") << "\n"
          << "holes_found: " << r.holes_found << "\n"
          << "min_hole_len: " << (r.min_hole_len ? std::to_string(*r.min_hole_len) : "none") << "\n"
          << "has_even_hole: " << to_string(r.has_even_hole) << "\n"
          << "nodes_expanded: " << r.nodes_expanded << "\n";
      const Witness* shown = nullptr;
      for (const auto& h : r.holes)
        if (o.pattern == "hole" || h.vertices.size() % 2 == 0) {
          shown = &h;
          break;
        }
      if (shown) print_witness(out, *shown);
    }
    return present == Tri::yes ? kExitFound : present == Tri::no ? kExitOk : kExitInconclusive;
  }

  PatternReport r;
  if (o.pattern == "theta")
    r = find_theta(in.graph, b);
  else if (o.pattern == "pyramid")
    r = find_pyramid(in.graph, b);
  else
    r = find_prism(in.graph, b);
  if (o.json) {
    ojson j = parsed(to_json(r));
    j["pattern"] = o.pattern;
    out << j.dump(2) << "\n";
  } else {
    out << "pattern: " << o.pattern << "\n"
        << "present: " << to_string(r.present()) << "\n"
        << "complete: " << (r.complete ? "true" : "false") << "\n"
        << "nodes_expanded: " << r.nodes_expanded << "\n";
    if (r.witness) print_witness(out, *r.witness);
  }
  const Tri p = r.present();
  return p == Tri::yes ? kExitFound : p == Tri::no ? kExitOk : kExitInconclusive;
}

// --- widths ------------------------------------------------------------------

int cmd_widths(const std::string& input, const std::string& rd_path, bool json, std::ostream& out) {
  const LayeredWheel w = load_wheel(input);
  const Graph& g = w.graph();
  bool ok = true;

  std::optional<std::string> minor_error;
  try {
    minor_certificate(w);
  } catch (const IntegrityError& e) {
    minor_error = e.what();
    ok = false;
  }
  std::optional<PathDecompositionResult> pd;
  std::optional<std::string> pd_error;
  try {
    pd = path_decomposition(w);
  } catch (const IntegrityError& e) {
    pd_error = e.what();
    ok = false;
  }
  std::optional<Edge> embed_fail;
  if (!pd_error) embed_fail = interval_embedding_failure(w, interval_model(w));
  if (embed_fail) ok = false;
  const std::size_t lower = w.l();
  const bool k33 = small_pattern_report(g).has_k33_subgraph;

  std::optional<std::size_t> rd_width;
  std::optional<RankwidthAudit> audit;
  if (!rd_path.empty()) {
    const RankDecomposition rd = rank_decomposition_from_json(read_file(rd_path));
    rd_width = rank_decomposition_width(g, rd);
    if (g.order() >= 2) {
      audit = rankwidth_audit(w, rd);
      ok = ok && audit->all_applicable_pass();
    }
  }

  if (json) {
    ojson j;
    j["minor"] = {{"valid", !minor_error},
                  {"branch_sets", w.layers().size()},
                  {"error", minor_error ? ojson(*minor_error) : ojson(nullptr)}};
    if (pd)
      j["path_decomposition"] = {{"valid", true},
                                 {"bags", pd->pd.bags.size()},
                                 {"width", pd->width},
                                 {"max_coverage", pd->max_coverage}};
    else
      j["path_decomposition"] = {{"valid", false}, {"error", *pd_error}};
    j["interval_embedding"] = {{"valid", !pd_error && !embed_fail},
                               {"failing_edge", embed_fail ? ojson{embed_fail->first, embed_fail->second} : ojson(nullptr)}};
    j["tw_lower"] = minor_error ? ojson(nullptr) : ojson(lower);
    j["pw_upper"] = pd ? ojson(pd->width) : ojson(nullptr);
    j["k33_subgraph_free"] = !k33;
    if (rd_width) j["rank_decomposition_width"] = *rd_width;
    if (audit) j["rankwidth_audit"] = parsed(to_json(*audit));
    j["ok"] = ok;
    out << j.dump(2) << "\n";
    return ok ? kExitOk : kExitFound;
  }

  out << "wheel: " << to_string(w.flavor()) << " l=" << w.l() << " k=" << w.k() << " |V|=" << g.order() << "\n";
  if (minor_error)
    out << "minor: invalid (" << *minor_error << ")\n";
  else
    out << "minor: K_" << w.layers().size() << " model from the layers, so tw >= " << lower << "\n";
  if (pd)
    out << "path decomposition: " << pd->pd.bags.size() << " bags, width " << pd->width << ", valid\n";
  else
    out << "path decomposition: invalid (" << *pd_error << ")\n";
  if (embed_fail)
    out << "interval embedding: edge " << embed_fail->first << "-" << embed_fail->second << " not covered\n";
  else if (!pd_error)
    out << "interval embedding: every edge covered\n";
  if (!minor_error && pd) {
    out << "tw ∈ [" << lower << "," << pd->width << "]\n";
    out << "pw ≤ " << pd->width << "\n";
    if (!k33) out << "cw ≥ " << (lower + 1 + 5) / 6 << " (no K_{3,3} subgraph, so tw ≤ 6·cw − 1)\n";
  }
  if (rd_width) out << "rank decomposition width: " << *rd_width << "\n";
  if (audit) {
    out << "rankwidth audit: certified bound " << audit->certified_bound << " ≤ width " << audit->width << "\n";
    for (const auto& s : audit->steps) out << "  " << s.name << ": " << to_string(s.verdict) << " (" << s.detail << ")\n";
    out << "  hypotheses: m >= 15 " << (audit->m_at_least_15 ? "holds" : "fails") << ", m >= 4l^2 "
        << (audit->m_at_least_4l2 ? "holds" : "fails") << "\n";
  }
  return ok ? kExitOk : kExitFound;
}

// --- convert -----------------------------------------------------------------

int cmd_convert(const std::string& input, const std::string& from, const std::string& to, const std::string& out_path,
                std::ostream& out) {
  const Loaded in = load(input, from);
  std::string artifact;
  if (to == "json") {
    if (!in.wheel) throw UsageError("only wheel input can be written as JSON");
    if (!in.mismatches.empty()) throw UsageError("wheel metadata does not match its graph: " + in.mismatches.front());
    artifact = wheel_to_json(*in.wheel);
  } else if (to == "dot" && in.wheel) {
    artifact = wheel_to_dot(*in.wheel);
  } else {
    artifact = export_graph(in.graph, graph_format_from_string(to));
  }
  if (out_path.empty())
    out << artifact;
  else
    write_file(out_path, artifact);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Layered wheel generator, auditor and width lab", "lwheel"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"json", "graph6", "dimacs", "edgelist", "dot"};

  GenerateOpts gen;
  auto* g = app.add_subcommand("generate", "Build a layered wheel");
  g->add_option("--flavor", gen.flavor, "ttf, ehf or ehf_pyramid_variant")
      ->check(CLI::IsMember({"ttf", "ehf", "ehf_pyramid_variant"}));
  g->add_option("--l", gen.l, "Index of the last layer");
  g->add_option("--k", gen.k, "Girth / hole-length parameter (>= 4)");
  g->add_option("--policy", gen.policy, "minimal, special or uniform")
      ->check(CLI::IsMember({"minimal", "special", "uniform"}));
  auto* m_opt = g->add_option("--m", gen.m, "Domain size for --policy uniform");
  g->add_option("--variant", gen.variant, "ehf zone pattern: standard or pyramid")
      ->check(CLI::IsMember({"standard", "pyramid"}));
  g->add_option("--out", gen.out, "Artifact path (default: standard output)");
  g->add_option("--format", gen.format, "Artifact format")->check(CLI::IsMember(formats));

  std::string audit_in;
  bool audit_json = false;
  auto* a = app.add_subcommand("audit", "Check a wheel JSON file against its construction rules");
  a->add_option("input", audit_in, "Wheel JSON")->required();
  a->add_flag("--json", audit_json, "Machine-readable report");

  DetectOpts det;
  auto* d = app.add_subcommand("detect", "Search a graph for holes or three-path configurations");
  d->add_option("input", det.input, "Graph or wheel file")->required();
  d->add_option("--pattern", det.pattern, "hole, even-hole, theta, pyramid or prism")
      ->required()
      ->check(CLI::IsMember({"hole", "even-hole", "theta", "pyramid", "prism"}));
  d->add_option("--format", det.format, "Input format (default: from the extension)")
      ->check(CLI::IsMember({"auto", "json", "graph6", "dimacs", "edgelist", "dot"}));
  d->add_option("--budget", det.budget, "Maximum search nodes expanded (0 = unlimited)");
  d->add_option("--deadline-ms", det.deadline_ms, "Wall-clock limit in milliseconds (0 = none)");
  d->add_option("--max-results", det.max_results, "Stop after this many holes (0 = unlimited)");
  d->add_option("--max-len", det.max_len, "Only holes up to this length (0 = any)");
  d->add_flag("--json", det.json, "Machine-readable report");

  std::string widths_in, rd_path;
  bool widths_json = false;
  auto* w = app.add_subcommand("widths", "Width certificates for a wheel JSON file");
  w->add_option("input", widths_in, "Wheel JSON")->required();
  w->add_option("--rd", rd_path, "Rank decomposition JSON to evaluate and audit");
  w->add_flag("--json", widths_json, "Machine-readable report");

  std::string conv_in, conv_from = "auto", conv_to, conv_out;
  auto* c = app.add_subcommand("convert", "Translate between wheel JSON and graph formats");
  c->add_option("input", conv_in, "Input file")->required();
  c->add_option("--from", conv_from, "Input format (default: from the extension)")
      ->check(CLI::IsMember({"auto", "json", "graph6", "dimacs", "edgelist", "dot"}));
  c->add_option("--to", conv_to, "Output format")->required()->check(CLI::IsMember(formats));
  c->add_option("--out", conv_out, "Output path (default: standard output)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  gen.has_m = m_opt->count() > 0;

  try {
    if (g->parsed()) return cmd_generate(gen, out, err);
    if (a->parsed()) return cmd_audit(audit_in, audit_json, out);
    if (d->parsed()) return cmd_detect(det, out);
    if (w->parsed()) return cmd_widths(widths_in, rd_path, widths_json, out);
    if (c->parsed()) return cmd_convert(conv_in, conv_from, conv_to, conv_out, out);
  } catch (const FeasibilityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ParseError& e) {
    err << "error: parse failure: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IntegrityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace lwheel
