#include "prkit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <thread>

#include "prkit/arrangements.hpp"
#include "prkit/error.hpp"
#include "prkit/io.hpp"
#include "prkit/lift.hpp"
#include "prkit/realize.hpp"
#include "prkit/render.hpp"
#include "prkit/sweep.hpp"

namespace prkit {

std::string tool_version() { return std::string("prkit ") + PRKIT_VERSION; }

namespace {

json tool_json() { return {{"name", "prkit"}, {"version", PRKIT_VERSION}}; }

// Input problems map to 2, everything else to 1.
int exit_code_for(const std::string& tag) {
  static const char* const input_tags[] = {"schema",          "parse",        "io",
                                           "invalid-graph",   "invalid-domain", "invalid-partition",
                                           "realize-parameters", "usage"};
  for (auto* t : input_tags)
    if (tag == t) return 2;
  return 1;
}

Rational parse_knob(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw Error("usage", flag + ": expected a rational number, got '" + text + "'");
  }
}

// Graph documents may be PR graphs or embedded graphs.
VDigraph load_any_graph(const std::string& path) {
  json j = read_json_file(path);
  if (j.is_object() && j.value("kind", "") == "embedded-graph") return to_vdigraph(embedded_from_json(j));
  return graph_from_json(j);
}

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(std::vector<std::string> args) {
    CLI::App app{"Poincare-Reeb graphs of planar algebraic domains", "prkit"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1, 1);
    app.add_option("--jobs", jobs_, "Worker threads for batch work (0: one per core)")->check(CLI::NonNegativeNumber);
    setup_validate(app);
    setup_reeb(app);
    setup_realize(app);
    setup_compare(app);
    setup_lift(app);
    setup_oracle(app);
    setup_render(app);

    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return 0;
    } catch (const CLI::CallForVersion&) {
      out_ << tool_version() << "\n";
      return 0;
    } catch (const CLI::ParseError& e) {
      err_ << e.what() << "\n";
      return 2;
    }
    if (jobs_ == 0) jobs_ = std::max(1u, std::thread::hardware_concurrency());
    try {
      return action_();
    } catch (const Error& e) {
      return error(e.tag(), e.what());
    } catch (const std::exception& e) {
      return error("internal", e.what());
    }
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  unsigned jobs_ = 1;
  std::function<int()> action_;
  json config_;

  // Option storage.
  std::string domain_, graph_, out_path_, report_, svg_, dot_, partition_, embedded_;
  std::string mode_ = "algebraic";
  std::vector<std::string> pair_;
  bool weak_ = false, no_order_ = false, overlay_ = false, no_shade_ = false;
  int max_degree_ = 10, max_level_ = 6, resolution_ = 1024, raster_resolution_ = 480, random_ = 0;
  int width_ = 640, columns_ = 320;
  unsigned seed_ = 1;
  std::string eps1_, eps2_, eps_prime_, delta_, excision_scale_ = "1";

  int error(const std::string& tag, const std::string& message) {
    json j{{"format", kFormat}, {"kind", "error"}, {"tool", tool_json()}, {"config", config_},
           {"error", {{"tag", tag}, {"message", message}}}};
    out_ << j.dump(2) << "\n";
    err_ << "prkit: " << tag << ": " << message << "\n";
    return exit_code_for(tag);
  }

  // Adds tool and config, then writes to the path or to stdout.
  void emit(json doc, const std::string& path) {
    doc["tool"] = tool_json();
    doc["config"] = config_;
    const std::string text = doc.dump(2) + "\n";
    if (path.empty()) out_ << text;
    else write_text_file(path, text);
  }

  std::string stamp(const std::string& open, const std::string& close) const {
    json j{{"tool", tool_json()}, {"config", config_}};
    std::string body = j.dump();
    // "--" may not appear inside an XML comment.
    for (size_t p; (p = body.find("--")) != std::string::npos;) body.replace(p, 2, "- -");
    return open + " " + body + " " + close + "\n";
  }

  void write_svg(const std::string& path, const std::string& svg) {
    // The stamp goes after the XML root opening tag.
    const size_t at = svg.find('\n') + 1;
    write_text_file(path, svg.substr(0, at) + stamp("<!--", "-->") + svg.substr(at));
  }

  void write_dot(const std::string& path, const VDigraph& g) {
    write_text_file(path, stamp("/*", "*/") + to_dot(g));
  }

  SvgOptions svg_options() const {
    SvgOptions o;
    o.width = width_;
    o.columns = columns_;
    o.shade = !no_shade_;
    return o;
  }

  int violations(const std::string& target, const std::vector<Violation>& vs, const std::vector<std::string>& notes) {
    json doc{{"format", kFormat},
             {"kind", "validation"},
             {"target", target},
             {"ok", vs.empty()},
             {"violations", violations_to_json(vs)},
             {"notes", notes}};
    emit(doc, out_path_);
    return vs.empty() ? 0 : 2;
  }

  void setup_validate(CLI::App& app) {
    auto* s = app.add_subcommand("validate", "Check a domain or an embedded graph");
    auto* d = s->add_option("--domain", domain_, "Domain JSON");
    auto* g = s->add_option("--graph", graph_, "Embedded graph JSON");
    d->excludes(g);
    s->add_option("--out", out_path_, "Report path (default stdout)");
    s->callback([this] {
      if (domain_.empty() == graph_.empty()) throw CLI::ValidationError("validate", "give exactly one of --domain, --graph");
      config_ = {{"subcommand", "validate"}, {"domain", domain_}, {"graph", graph_}};
      action_ = [this] {
        if (!domain_.empty()) {
          auto rep = validate_domain(domain_from_json(read_json_file(domain_)));
          return violations("domain", rep.violations, rep.notes);
        }
        return violations("graph", validate_theorem_hypotheses(embedded_from_json(read_json_file(graph_))), {});
      };
    });
  }

  void setup_reeb(CLI::App& app) {
    auto* s = app.add_subcommand("reeb", "Exact Poincare-Reeb graph of a domain");
    s->add_option("--domain", domain_, "Domain JSON")->required();
    s->add_option("--out", out_path_, "Graph JSON path (default stdout)");
    s->add_option("--dot", dot_, "Also write DOT");
    s->add_option("--svg", svg_, "Also write SVG with the graph overlay");
    s->add_option("--max-level", max_level_, "Refinement depth per critical value")->check(CLI::PositiveNumber);
    s->callback([this] {
      config_ = {{"subcommand", "reeb"}, {"domain", domain_}, {"max_level", max_level_}};
      action_ = [this] {
        DomainSpec d = domain_from_json(read_json_file(domain_));
        auto rep = validate_domain(d);
        if (!rep.ok()) return violations("domain", rep.violations, rep.notes);
        SweepOptions so;
        so.max_level = max_level_;
        PRGraph pr = build_poincare_reeb(d, so);
        json doc = graph_to_json(pr.graph);
        json vals = json::array();
        for (auto& v : pr.values) vals.push_back(algebraic_to_json(v));
        doc["values"] = vals;
        emit(doc, out_path_);
        if (!dot_.empty()) write_dot(dot_, pr.graph);
        if (!svg_.empty()) write_svg(svg_, render_svg(d, &pr.graph, nullptr, svg_options()));
        return 0;
      };
    });
  }

  void setup_realize(CLI::App& app) {
    auto* s = app.add_subcommand("realize", "Build a domain whose PR graph is a given embedded graph");
    s->add_option("--graph", graph_, "Embedded graph JSON")->required();
    s->add_option("--mode", mode_, "algebraic or piecewise")->check(CLI::IsMember({"algebraic", "piecewise"}));
    s->add_option("--max-degree", max_degree_, "Largest fitting degree")->check(CLI::Range(2, 30));
    s->add_option("--out", out_path_, "Domain JSON (algebraic mode)");
    s->add_option("--report", report_, "Report JSON (default stdout)");
    s->add_option("--svg", svg_, "Picture of the result");
    s->add_option("--eps1", eps1_, "Window half-width");
    s->add_option("--eps2", eps2_, "Neighbourhood half-height");
    s->add_option("--eps-prime", eps_prime_, "Landing parameter");
    s->add_option("--delta", delta_, "Thickening radius");
    s->add_option("--excision-scale", excision_scale_, "Factor on excision sizes");
    s->add_option("--raster-resolution", raster_resolution_, "Grid of the numeric pre-screens")
        ->check(CLI::Range(64, 8192));
    s->add_option("--max-level", max_level_, "Refinement depth of the exact sweep")->check(CLI::PositiveNumber);
    s->callback([this] {
      if (mode_ == "piecewise" && !out_path_.empty())
        throw CLI::ValidationError("--out", "piecewise mode produces no algebraic domain");
      action_ = [this] { return realize_action(); };
    });
  }

  int realize_action() {
    RealizationConfig cfg;
    cfg.piecewise = mode_ == "piecewise";
    cfg.max_degree = max_degree_;
    cfg.raster_resolution = raster_resolution_;
    cfg.sweep.max_level = max_level_;
    if (!eps1_.empty()) cfg.eps1 = parse_knob("--eps1", eps1_);
    if (!eps2_.empty()) cfg.eps2 = parse_knob("--eps2", eps2_);
    if (!eps_prime_.empty()) cfg.eps_prime = parse_knob("--eps-prime", eps_prime_);
    if (!delta_.empty()) cfg.delta = parse_knob("--delta", delta_);
    cfg.excision_scale = parse_knob("--excision-scale", excision_scale_);
    if (sgn(cfg.excision_scale) <= 0) throw Error("usage", "--excision-scale must be positive");
    config_ = cfg.to_json();
    config_["subcommand"] = "realize";
    config_["graph"] = graph_;

    EmbeddedGraph g = embedded_from_json(read_json_file(graph_));
    auto vs = validate_theorem_hypotheses(g);
    if (!vs.empty()) return violations("graph", vs, {});
    Realization r = realize(g, cfg);
    json rep = realization_report(g, r);
    emit(rep, report_);
    if (!report_.empty())
      out_ << json{{"verified", r.verified}, {"mode", rep["mode"]}, {"fit_degree", r.artifacts.fit_degree},
                   {"failure", r.failure}}
                  .dump()
           << "\n";
    if (r.algebraic && r.verified && !out_path_.empty()) emit(domain_to_json(r.domain), out_path_);
    if (!svg_.empty()) {
      if (r.algebraic && r.verified) {
        write_svg(svg_, render_svg(r.domain, &r.graph, &g, svg_options()));
      } else {
        write_svg(svg_, render_embedded_svg(complex_graph(r.artifacts.complex), svg_options()));
      }
    }
    return r.verified ? 0 : 1;
  }

  static EmbeddedGraph complex_graph(const std::vector<Segment>& cx) {
    EmbeddedGraph g;
    std::map<Point, int> ids;
    auto vid = [&](const Point& p) {
      auto [it, fresh] = ids.try_emplace(p, static_cast<int>(g.vertices.size()));
      if (fresh) g.vertices.push_back({"", p.first, p.second});
      return it->second;
    };
    for (auto& s : cx) g.edges.push_back({s.role, vid(s.a), vid(s.b), {}});
    return g;
  }

  void setup_compare(CLI::App& app) {
    auto* s = app.add_subcommand("compare", "Isomorphism test between two graphs");
    s->add_option("graphs", pair_, "Two graph JSON files (PR or embedded)")->required()->expected(2);
    s->add_flag("--weak", weak_, "Compare after removing pass-through vertices");
    s->add_flag("--no-order", no_order_, "Ignore the value order");
    s->add_option("--out", out_path_, "Verdict path (default stdout)");
    s->callback([this] {
      config_ = {{"subcommand", "compare"}, {"graphs", pair_}, {"weak", weak_}, {"order", !no_order_}};
      action_ = [this] {
        VDigraph a = load_any_graph(pair_[0]), b = load_any_graph(pair_[1]);
        IsoOptions o;
        o.check_order = !no_order_;
        bool verdict = weak_ ? is_weakly_isomorphic(a, b, o) : is_isomorphic(a, b, o);
        emit({{"format", kFormat}, {"kind", "comparison"}, {"verdict", verdict}}, out_path_);
        return 0;
      };
    });
  }

  void setup_lift(CLI::App& app) {
    auto* s = app.add_subcommand("lift", "Emit the lifted polynomial system");
    s->add_option("--domain", domain_, "Domain JSON")->required();
    s->add_option("--partition", partition_, "Labels and multiplicities (default: one label per curve, m0 = 0)");
    s->add_option("--out", out_path_, "Lift JSON path (default stdout)");
    s->callback([this] {
      config_ = {{"subcommand", "lift"}, {"domain", domain_}, {"partition", partition_}};
      action_ = [this] {
        DomainSpec d = domain_from_json(read_json_file(domain_));
        LiftSpec l = partition_.empty() ? default_lift(d) : lift_from_json(read_json_file(partition_));
        auto vs = validate_partition(d, l);
        if (!vs.empty()) return violations("partition", vs, {});
        json doc = lift_to_json(emit_lift(d, l));
        doc["assignment"] = l.assignment;
        doc["multiplicity"] = l.multiplicity;
        emit(doc, out_path_);
        return 0;
      };
    });
  }

  void setup_oracle(CLI::App& app) {
    auto* s = app.add_subcommand("oracle", "Raster PR graph, or the random agreement suite");
    auto* d = s->add_option("--domain", domain_, "Domain JSON");
    auto* r = s->add_option("--random", random_, "Run the suite on this many random conic arrangements")
                  ->check(CLI::PositiveNumber);
    d->excludes(r);
    s->add_option("--seed", seed_, "Seed of the random suite");
    s->add_option("--resolution", resolution_, "Raster resolution")->check(CLI::Range(16, 8192));
    s->add_option("--out", out_path_, "Output path (default stdout)");
    s->callback([this] {
      if (domain_.empty() && random_ == 0) throw CLI::ValidationError("oracle", "give --domain or --random");
      config_ = {{"subcommand", "oracle"}, {"domain", domain_},     {"random", random_},
                 {"seed", seed_},          {"resolution", resolution_}};
      action_ = [this] { return domain_.empty() ? oracle_suite() : oracle_single(); };
    });
  }

  int oracle_single() {
    DomainSpec d = domain_from_json(read_json_file(domain_));
    auto rep = validate_domain(d);
    if (!rep.ok()) return violations("domain", rep.violations, rep.notes);
    VDigraph raster = raster_oracle(d, resolution_);
    VDigraph exact = build_poincare_reeb(d).graph;
    json doc = graph_to_json(raster);
    doc["agrees_with_exact"] = is_weakly_isomorphic(exact, raster);
    emit(doc, out_path_);
    return 0;
  }

  // Cases are split over the workers; results are assembled by index.
  int oracle_suite() {
    auto cases = random_conic_arrangements(random_, seed_, resolution_);
    std::vector<json> rows(cases.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
      for (size_t i; (i = next++) < cases.size();) {
        json row{{"index", i}};
        try {
          VDigraph exact = build_poincare_reeb(cases[i]).graph;
          VDigraph raster = raster_oracle(cases[i], resolution_);
          row["vertices"] = exact.vertices.size();
          row["edges"] = exact.edges.size();
          row["agree"] = is_weakly_isomorphic(exact, raster);
        } catch (const Error& e) {
          row["agree"] = false;
          row["error"] = {{"tag", e.tag()}, {"message", e.what()}};
        }
        rows[i] = row;
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::min<size_t>(jobs_, cases.size()); ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    int agree = 0;
    for (auto& r : rows) agree += r["agree"].get<bool>();
    emit({{"format", kFormat},
          {"kind", "oracle-suite"},
          {"generated", cases.size()},
          {"agree", agree},
          {"cases", rows}},
         out_path_);
    return agree == static_cast<int>(cases.size()) && static_cast<int>(cases.size()) == random_ ? 0 : 1;
  }

  void setup_render(CLI::App& app) {
    auto* s = app.add_subcommand("render", "SVG or DOT pictures");
    s->add_option("--domain", domain_, "Domain JSON");
    s->add_option("--graph", graph_, "PR graph JSON (overlay, or DOT source)");
    s->add_option("--embedded", embedded_, "Embedded graph JSON drawn dashed");
    s->add_flag("--overlay", overlay_, "Compute and overlay the exact PR graph of the domain");
    s->add_flag("--no-shade", no_shade_, "Do not shade the basepoint component");
    s->add_option("--width", width_, "Plot width in pixels")->check(CLI::Range(16, 8192));
    s->add_option("--columns", columns_, "Columns of the root plot")->check(CLI::Range(2, 8192));
    s->add_option("--svg", svg_, "SVG output path");
    s->add_option("--dot", dot_, "DOT output path");
    s->callback([this] {
      if (svg_.empty() && dot_.empty()) throw CLI::ValidationError("render", "give --svg and/or --dot");
      if (domain_.empty() && graph_.empty() && embedded_.empty())
        throw CLI::ValidationError("render", "nothing to draw");
      config_ = {{"subcommand", "render"}, {"domain", domain_},  {"graph", graph_},     {"embedded", embedded_},
                 {"overlay", overlay_},    {"shade", !no_shade_}, {"width", width_},     {"columns", columns_}};
      action_ = [this] { return render_action(); };
    });
  }

  int render_action() {
    std::optional<VDigraph> graph;
    std::optional<DomainSpec> dom;
    std::optional<EmbeddedGraph> emb;
    if (!graph_.empty()) graph = load_any_graph(graph_);
    if (!embedded_.empty()) emb = embedded_from_json(read_json_file(embedded_));
    if (!domain_.empty()) {
      dom = domain_from_json(read_json_file(domain_));
      if (overlay_) {
        auto rep = validate_domain(*dom);
        if (!rep.ok()) return violations("domain", rep.violations, rep.notes);
        graph = build_poincare_reeb(*dom).graph;
      }
    }
    if (!svg_.empty()) {
      if (dom)
        write_svg(svg_, render_svg(*dom, graph ? &*graph : nullptr, emb ? &*emb : nullptr, svg_options()));
      else if (emb)
        write_svg(svg_, render_embedded_svg(*emb, svg_options()));
      else
        throw Error("usage", "--svg needs --domain or --embedded");
    }
    if (!dot_.empty()) {
      if (!graph && emb) graph = to_vdigraph(*emb);
      if (!graph) throw Error("usage", "--dot needs a graph (--graph, --embedded or --domain with --overlay)");
      write_dot(dot_, *graph);
    }
    emit({{"format", kFormat}, {"kind", "render"}, {"svg", svg_}, {"dot", dot_}}, "");
    return 0;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Cli(out, err).run(args);
}

}  // namespace prkit
