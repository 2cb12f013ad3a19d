// trihom: command-line front end.
//
// Exit status: 0 when every check passes, 1 when a check fails or the
// input is refused, 2 on usage errors.  Errors go to stderr as
// "error: <kind>: <message>".

#include "trihom/dataio.hpp"
#include "trihom/invariants.hpp"
#include "trihom/parallel.hpp"
#include "trihom/skein.hpp"
#include "trihom/sl2.hpp"
#include "trihom/soergel.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace trihom;
using nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int default_jobs() {
  if (const char* e = std::getenv("TRIHOM_JOBS")) {
    try {
      int j = std::stoi(e);
      if (j >= 1) return j;
    } catch (...) {
    }
  }
  return 1;
}

std::string default_fixtures() {
  if (const char* e = std::getenv("TRIHOM_FIXTURES")) return e;
  return std::string(TRIHOM_DATA_DIR) + "/fixtures";
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::pair<int, int> parse_window(const std::string& w) {
  auto c = w.find(':');
  if (c == std::string::npos) throw UsageError("--window wants LO:HI");
  try {
    return {std::stoi(w.substr(0, c)), std::stoi(w.substr(c + 1))};
  } catch (...) {
    throw UsageError("--window wants LO:HI");
  }
}

// Every .tbl under a directory (sorted) or the files themselves.
std::vector<KnotRecord> load_inputs(const std::vector<std::string>& inputs, const std::string& ns_file) {
  std::vector<KnotRecord> out;
  for (auto& in : inputs) {
    std::filesystem::path p(in);
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> files;
      for (auto& e : std::filesystem::directory_iterator(p))
        if (e.path().extension() == ".tbl") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (auto& f : files)
        for (auto& r : parse_dataset(f)) out.push_back(std::move(r));
    } else {
      for (auto& r : parse_dataset(p)) out.push_back(std::move(r));
    }
  }
  if (!ns_file.empty()) {
    std::ifstream f(ns_file);
    if (!f) throw std::runtime_error("cannot open " + ns_file);
    std::stringstream ss;
    ss << f.rdbuf();
    NsImport imp = import_ns_format(ss.str());
    for (auto& e : imp.errors) std::cerr << "error: ns-format: " << ns_file << ": " << e << "\n";
    for (auto& r : imp.records) out.push_back(std::move(r));
  }
  return out;
}

// Prints one check line; returns ok.
struct Checker {
  bool all = true;
  bool check(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) std::cout << "  " << detail;
    std::cout << "\n";
    all = all && ok;
    return ok;
  }
  template <class F>
  void guarded(const std::string& name, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      check(name, false, e.what());
    }
  }
};

// --- subcommands ---

int cmd_compute(const std::string& braid, const std::string& name, const std::string& window, bool no_grow,
                const std::string& out, int jobs) {
  BraidWord b = parse_braid(braid);
  ComputeOptions opt;
  opt.jobs = jobs;
  if (!window.empty()) opt.window = parse_window(window);
  opt.grow = !no_grow;
  KnotRecord r;
  r.name = name.empty() ? "knot" : name;
  r.braid = b.to_string();
  r.signature = signature(b);
  r.dims = compute_triply_graded(b, opt);
  emit(format_record(r), out);
  return 0;
}

int cmd_deform(const std::string& braid, const std::string& dw, const std::string& out, int jobs) {
  BraidWord b = parse_braid(braid);
  Potential pot = Potential::parse(dw);
  ComputeOptions opt;
  opt.jobs = jobs;
  FilteredHomology f = compute_deformed(b, pot, opt);
  ordered_json j;
  j["braid"] = b.to_string();
  j["potential"] = pot.to_string();
  j["N"] = pot.N();
  j["total"] = f.total();
  j["dims"] = ordered_json::array();
  for (auto& [k, d] : f.dims) j["dims"].push_back({{"q_sl", k.first}, {"t_dgr", k.second}, {"dim", d}});
  if (f.total() == 1 && pot.N() >= 2 && !pot.homogeneous()) {
    JS js = j_and_s(f);
    j["j"] = js.j;
    j["s"] = js.s.get_str();
  }
  if (!f.positions.empty()) {
    j["positions"] = ordered_json::array();
    for (auto& x : f.positions) j["positions"].push_back({{"q", x.q}, {"a", x.a}, {"t", x.t}});
  }
  emit(j.dump(2) + "\n", out);
  return 0;
}

std::vector<InvariantReport> analyze_all(const std::vector<KnotRecord>& recs, const AnalyzeOptions& opt, int jobs,
                                         bool& failed) {
  std::vector<InvariantReport> reps(recs.size());
  std::vector<std::string> errs(recs.size());
  detail::parallel_for(recs.size(), jobs, [&](size_t i) {
    try {
      reps[i] = analyze(recs[i].name, recs[i].dims, opt, recs[i].rasmussen_s);
    } catch (const std::exception& e) {
      errs[i] = e.what();
      reps[i].name = recs[i].name;
      reps[i].profile = delta_profile(recs[i].dims);
      reps[i].notes.push_back(std::string("refused: ") + e.what());
    }
  });
  for (size_t i = 0; i < recs.size(); ++i) {
    if (!errs[i].empty()) {
      std::cerr << "error: invariants: " << recs[i].name << ": " << errs[i] << "\n";
      failed = true;
    }
    if (!reps[i].structure.symmetric || !reps[i].structure.unimodal) failed = true;
  }
  return reps;
}

int cmd_analyze(const std::vector<std::string>& inputs, const std::string& ns, const std::vector<int>& N,
                bool no_blocks, const std::string& out, int jobs) {
  auto recs = load_inputs(inputs, ns);
  if (recs.empty()) throw UsageError("no knot records given");
  AnalyzeOptions opt;
  opt.N = N;
  opt.blocks = !no_blocks;
  bool failed = false;
  auto reps = analyze_all(recs, opt, jobs, failed);
  std::string text;
  if (reps.size() == 1) {
    text = report_json(reps[0]) + "\n";
  } else {
    ordered_json arr = ordered_json::array();
    for (auto& r : reps) arr.push_back(ordered_json::parse(report_json(r)));
    text = arr.dump(2) + "\n";
  }
  emit(text, out);
  return failed ? 1 : 0;
}

int cmd_batch(const std::vector<std::string>& inputs, const std::string& ns, const std::vector<int>& N,
              const std::string& out, int jobs) {
  auto recs = load_inputs(inputs, ns);
  AnalyzeOptions opt;
  opt.N = N;
  bool failed = false;
  auto reps = analyze_all(recs, opt, jobs, failed);
  if (out.empty() || out == "-") std::cout << report_document(recs, reps);
  else write_report(recs, reps, out);
  return failed ? 1 : 0;
}

int cmd_render(const std::string& input, std::optional<int> S, bool auto_S, const std::string& format,
               const std::string& config, const std::string& out) {
  auto recs = parse_dataset(input);
  if (recs.size() != 1) throw UsageError("render wants a file with one knot");
  RenderFormat fmt;
  if (format == "ascii") fmt = RenderFormat::ascii;
  else if (format == "svg") fmt = RenderFormat::svg;
  else throw UsageError("--format is ascii or svg");
  if (auto_S && !S) {
    auto cert = certify_d1_standard(recs[0].dims);
    if (!cert.standard()) throw std::runtime_error("S undetermined: " + cert.reason);
    S = s_invariant(recs[0].dims, cert).S;
  }
  RenderConfig cfg = config.empty() ? RenderConfig{} : load_render_config(config);
  emit(render_slices(recs[0].dims, S, fmt, cfg), out);
  return 0;
}

int cmd_validate(const std::string& braid, bool skip_identities, int jobs) {
  BraidWord b = parse_braid(braid);
  Checker c;
  ComputeOptions opt;
  opt.jobs = jobs;
  TrigradedDims h;
  c.guarded("compute", [&] {
    h = compute_triply_graded(b, opt);
    c.check("compute", true, "total=" + std::to_string(h.total()));
  });
  if (!h.empty()) {
    c.guarded("skein specialization", [&] {
      LaurentPoly2 P = homfly_poly(b);
      c.check("skein specialization P(q,a) = Poincare(q,a,-1)", h.euler() == P);
    });
    auto st = structure_checks(h);
    c.check("symmetry (q,a,t) -> (-q,a,t+2q)", st.symmetric);
    c.check("unimodality per q mod 4", st.unimodal);
    c.guarded("sl(1) survivor", [&] {
      auto f = compute_deformed(b, Potential::parse("x"), opt);
      bool one = f.total() == 1 && f.dims.count({0, 0}) == 1;
      c.check("sl(1) homology one-dimensional at (0,0)", one);
      auto cert = certify_d1_standard(h);
      if (cert.standard() && one && f.positions.size() == 1) {
        int S = s_invariant(h, cert).S;
        c.check("sl(1) survivor at (S,-S,-S)", f.positions[0] == Tri{S, -S, -S}, "S=" + std::to_string(S));
      }
    });
  }
  if (!skip_identities) {
    c.guarded("identity suite", [&] {
      std::vector<Potential> pots;
      for (auto* s : {"x", "x^2", "x^2-x", "x^3"}) pots.push_back(Potential::parse(s));
      for (auto& id : identity_checks(b, pots)) c.check("identity " + id.name, id.ok, id.detail);
    });
  }
  return c.all ? 0 : 1;
}

int cmd_selftest(const std::string& dir, int jobs) {
  Checker c;
  // small computations against the thin reconstruction
  ComputeOptions opt;
  opt.jobs = jobs;
  for (auto* s : {"n=1:", "n=2: 1", "n=2: 1 1 1", "n=2: -1 -1 -1", "n=3: 1 -2 1 -2"}) {
    c.guarded(std::string("compute ") + s, [&] {
      BraidWord b = parse_braid(s);
      TrigradedDims h = compute_triply_graded(b, opt);
      c.check(std::string("compute ") + s + " is the thin reconstruction",
              h == thin_reconstruction(homfly_poly(b), signature(b)));
    });
  }
  // transcribed sl(2) actions
  c.guarded("sl(2) fixtures", [&] {
    for (auto& f : action_fixtures()) {
      SL2Action act = solve_F(f.action);
      c.check("sl(2) brackets " + f.knot, all_ok(bracket_checks(act)));
      auto sd = super_differentials(act, f.d.at(1), 1);
      c.check("super differentials " + f.knot, all_ok(sd.checks));
    }
  });
  // invariant suite on every bundled table
  std::vector<KnotRecord> recs;
  c.guarded("load fixtures", [&] { recs = load_inputs({dir}, ""); });
  c.check("fixtures found", !recs.empty(), dir);
  bool failed = false;
  auto reps = analyze_all(recs, {}, jobs, failed);
  for (size_t i = 0; i < recs.size(); ++i) {
    auto& r = reps[i];
    auto& k = recs[i];
    bool ok = r.S && r.structure.symmetric && r.structure.unimodal && r.blocks;
    if (ok && r.profile.thin && k.rasmussen_s) ok = r.S->S == -*k.rasmussen_s;
    std::string detail = "status=" + to_string(r.cert.status) + (r.S ? " S=" + std::to_string(r.S->S) : "");
    c.check("fixture " + k.name, ok, detail);
  }
  return c.all && !failed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trihom: triply graded knot homology and its invariants"};
  app.require_subcommand(1);
  app.fallthrough();
  int jobs = default_jobs();
  app.add_option("-j,--jobs", jobs, "worker threads (default $TRIHOM_JOBS or 1)")->check(CLI::PositiveNumber);

  std::string braid, name, window, out, dw = "x^2-x", ns, format = "ascii", config, fixtures = default_fixtures();
  std::vector<std::string> inputs;
  std::vector<int> N = {2, 3, 4};
  std::optional<int> S;
  bool no_grow = false, no_blocks = false, auto_S = false, skip_ids = false;

  auto* compute = app.add_subcommand("compute", "reduced HOMFLY-PT homology of a braid closure");
  compute->add_option("-b,--braid", braid, "braid word, e.g. \"n=2: -1 -1 -1\"")->required();
  compute->add_option("--name", name, "knot name for the record");
  compute->add_option("--window", window, "NS q-range LO:HI");
  compute->add_flag("--no-grow", no_grow, "fail instead of widening the window");
  compute->add_option("-o,--output", out, "output table (default stdout)");

  auto* deform = app.add_subcommand("deform", "deformed homology for a potential dW, with j and s");
  deform->add_option("-b,--braid", braid, "braid word")->required();
  deform->add_option("--dw", dw, "dW, e.g. x^3-x (default x^2-x)");
  deform->add_option("-o,--output", out, "output JSON (default stdout)");

  auto* analyze_cmd = app.add_subcommand("analyze", "invariant report for tables");
  analyze_cmd->add_option("inputs", inputs, "table files or directories");
  analyze_cmd->add_option("--ns-format", ns, "import an NS-style polynomial list");
  analyze_cmd->add_option("-N", N, "sl(N) collapses to report")->delimiter(',');
  analyze_cmd->add_flag("--no-blocks", no_blocks, "skip the block decomposition");
  analyze_cmd->add_option("-o,--output", out, "output JSON (default stdout)");

  auto* render = app.add_subcommand("render", "per-Delta slice figure");
  std::string render_in;
  render->add_option("input", render_in, "table file")->required();
  render->add_option("--S", S, "mark the d_1 and d_-1 survivors for this S");
  render->add_flag("--auto-S", auto_S, "certify the table and mark its S");
  render->add_option("-f,--format", format, "ascii or svg")->check(CLI::IsMember({"ascii", "svg"}));
  render->add_option("--config", config, "render constants (JSON)");
  render->add_option("-o,--output", out, "output file (default stdout)");

  auto* validate = app.add_subcommand("validate", "skein specialization, structure and identity checks");
  validate->add_option("-b,--braid", braid, "braid word")->required();
  validate->add_flag("--skip-identities", skip_ids, "only the homology checks");

  auto* selftest = app.add_subcommand("selftest", "invariant suite on the bundled fixtures");
  selftest->add_option("--fixtures", fixtures, "fixture directory");

  auto* batch = app.add_subcommand("batch", "reports and aggregate tables for many knots");
  batch->add_option("inputs", inputs, "table files or directories");
  batch->add_option("--ns-format", ns, "import an NS-style polynomial list");
  batch->add_option("-N", N, "sl(N) collapses to report")->delimiter(',');
  batch->add_option("-o,--output", out, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*compute) return cmd_compute(braid, name, window, no_grow, out, jobs);
    if (*deform) return cmd_deform(braid, dw, out, jobs);
    if (*analyze_cmd) return cmd_analyze(inputs, ns, N, no_blocks, out, jobs);
    if (*render) return cmd_render(render_in, S, auto_S, format, config, out);
    if (*validate) return cmd_validate(braid, skip_ids, jobs);
    if (*selftest) return cmd_selftest(fixtures, jobs);
    if (*batch) return cmd_batch(inputs, ns, N, out, jobs);
  } catch (const UsageError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  } catch (const BraidError& e) {
    std::cerr << "error: usage: bad braid: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: parse: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
