#include "doctest.h"
#include "trihom/dataio.hpp"
#include "trihom/sl2.hpp"

#include <fstream>
#include <sstream>

using namespace trihom;

namespace {

std::string fixture_path(const std::string& name) { return std::string(TRIHOM_SOURCE_DIR) + "/fixtures/" + name + ".tbl"; }

KnotRecord load(const std::string& name) { return parse_dataset(fixture_path(name)).at(0); }

size_t count(const std::string& hay, const std::string& needle) {
  size_t n = 0;
  for (size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

// the svg group of one Delta panel
std::string panel(const std::string& svg, int delta) {
  std::string open = "<g class=\"panel\" data-delta=\"" + std::to_string(delta) + "\">";
  size_t b = svg.find(open);
  REQUIRE(b != std::string::npos);
  return svg.substr(b, svg.find("</g>", b) - b);
}

// transcription of the 11a85 figure as a Poincare polynomial
const char* k11a85 =
    "P = q^-6*a^2*t^6 + q^-6*a^4*t^4 + q^-4*a^0*t^6 + 3*q^-4*a^2*t^4 + 4*q^-4*a^4*t^2 + 2*q^-4*a^6*t^0"
    " + 2*q^-2*a^0*t^4 + 8*q^-2*a^2*t^2 + 9*q^-2*a^4*t^0 + 5*q^-2*a^6*t^-2 + q^-2*a^8*t^-4 + 3*q^0*a^0*t^2"
    " + 9*q^0*a^2*t^0 + 12*q^0*a^4*t^-2 + 7*q^0*a^6*t^-4 + 2*q^0*a^8*t^-6 + 2*q^2*a^0*t^0 + 8*q^2*a^2*t^-2"
    " + 9*q^2*a^4*t^-4 + 5*q^2*a^6*t^-6 + q^2*a^8*t^-8 + q^4*a^0*t^-2 + 3*q^4*a^2*t^-4 + 4*q^4*a^4*t^-6"
    " + 2*q^4*a^6*t^-8 + q^6*a^2*t^-6 + q^6*a^4*t^-8";

}  // namespace

TEST_CASE("canonical records") {
  auto r = parse_dataset_text("knot unknot\nentry q=0 a=0 t=0 dim=1\n");
  REQUIRE(r.size() == 1);
  CHECK(r[0].name == "unknot");
  CHECK(r[0].dims.total() == 1);
  CHECK(r[0].dims.at({0, 0, 0}) == 1);

  auto two = parse_dataset_text(
      "# first\nknot a\nconvention NS\nsignature -2\nentry q=0 a=0 t=0 dim=1\n\n# second\nknot b\nrasmussen_s 4\n"
      "entry q=2 a=2 t=-4 dim=3\n");
  REQUIRE(two.size() == 2);
  CHECK(two[0].comments == std::vector<std::string>{"first"});
  CHECK(two[0].signature == -2);
  CHECK(two[1].comments == std::vector<std::string>{"second"});
  CHECK(two[1].rasmussen_s == 4);
  CHECK(two[1].dims.at({2, 2, -4}) == 3);
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_dataset_text(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("knot k\nentry q=1 a=0 t=0 dim=1\n") == 2);                       // odd grading
  CHECK(line_of("knot k\nentry q=0 a=0 t=0 dim=1\nentry q=0 a=0 dim=1\n") == 3);   // missing t
  CHECK(line_of("knot k\nentry q=0 a=0 t=0 dim=0\n") == 2);
  CHECK(line_of("entry q=0 a=0 t=0 dim=1\n") == 1);
  CHECK(line_of("knot k\nconvention DGR\n") == 2);
  CHECK(line_of("knot k\nwhatever 3\n") == 2);
  CHECK(line_of("knot k\nsignature x\n") == 2);
  CHECK(line_of("knot k\n# nothing\nknot j\nentry q=0 a=0 t=0 dim=1\n") == 1);   // empty record
  CHECK(line_of("knot k\nP = q^2*a^0*t^-2 - q^0\n") == 2);
  CHECK(line_of("knot k\nP = q^1*a^0*t^-1\n") == 1);   // odd, found when the record closes
  CHECK_THROWS(parse_dataset("/nonexistent/file.tbl"));
}

TEST_CASE("Poincare polynomials") {
  auto h = parse_poincare("q^-2*a^2*t^0 + 3 q^{2} a^(2) t^-4 + q^0*a^0*t^0 + 2*a^2*t^-2");
  CHECK(h.total() == 7);
  CHECK(h.at({2, 2, -4}) == 3);
  CHECK(h.at({0, 2, -2}) == 2);
  CHECK(parse_poincare(format_poincare(h)) == h);
  CHECK(parse_poincare("1") == parse_dataset_text("knot u\nentry q=0 a=0 t=0 dim=1\n")[0].dims);
  CHECK_THROWS(parse_poincare("q^2*q^2"));
  CHECK_THROWS(parse_poincare("x^2"));
  CHECK_THROWS(parse_poincare("q^(2"));

  auto rec = parse_dataset_text(std::string("knot 11a85\n") + k11a85 + "\n").at(0);
  CHECK(rec.dims.delta_support() == std::set<int>{2});
  CHECK(rec.dims == load("11a85").dims);

  // continuation lines
  auto cont = parse_dataset_text("knot k\nP = q^0*a^0*t^0\n  + q^2*a^2*t^-4\nfamily two-bridge\n").at(0);
  CHECK(cont.dims.total() == 2);
  CHECK(cont.family == "two-bridge");
}

TEST_CASE("round trip on every fixture") {
  for (auto& e : std::filesystem::directory_iterator(std::string(TRIHOM_SOURCE_DIR) + "/fixtures")) {
    auto recs = parse_dataset(e.path());
    REQUIRE(recs.size() == 1);
    CAPTURE(recs[0].name);
    auto again = parse_dataset_text(format_record(recs[0]));
    REQUIRE(again.size() == 1);
    CHECK(again[0] == recs[0]);
    CHECK(recs[0].family.has_value());
    CHECK(recs[0].braid.has_value());
    // the file is already canonical
    std::ifstream in(e.path());
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(format_record(recs[0]) == ss.str());
  }
}

TEST_CASE("fixture tables agree with the transcribed sl(2) bases") {
  for (auto& f : action_fixtures()) {
    CAPTURE(f.knot);
    TrigradedDims h = load(f.knot).dims;
    std::map<std::tuple<int, int, int>, long> from_basis, from_table;
    for (auto& w : f.action.basis) ++from_basis[{w.q, w.a, w.delta}];
    for (auto& [x, d] : h.dims) from_table[{x.q, x.a, x.delta()}] += d;
    CHECK(from_basis == from_table);
    CHECK(*load(f.knot).rasmussen_s == f.s);
  }
}

TEST_CASE("NS-style import") {
  auto r = import_ns_format(
      "# comment\n"
      "3_1: q^-2*a^2*t^0 + q^2*a^2*t^-4 + q^0*a^4*t^-4\n"
      "4_1\tq^0*a^0*t^0 + q^-2*a^2*t^-2\n"
      "bad_line\n"
      "5_1: q^1*a^0*t^0\n"
      "6_1: q^0 - q^2\n");
  CHECK(r.records.size() == 2);
  CHECK(r.records[0].name == "3_1");
  CHECK(r.records[0].dims.total() == 3);
  CHECK(r.records[1].name == "4_1");
  REQUIRE(r.errors.size() == 3);
  CHECK(r.errors[0].rfind("line 4:", 0) == 0);
  CHECK(r.errors[1].rfind("line 5:", 0) == 0);
  CHECK(r.errors[2].rfind("line 6:", 0) == 0);
}

TEST_CASE("slice figures") {
  auto k = load("11n80").dims;
  std::string a = render_slices(k, 2, RenderFormat::ascii);
  CHECK(count(a, "Delta = ") == 2);
  CHECK(a.find("Delta = -4") < a.find("Delta = -2"));
  std::string lower = a.substr(a.find("Delta = -2"));
  CHECK(count(lower, "(") == 2);
  CHECK(count(a.substr(0, a.find("Delta = -2")), "(") == 0);

  std::string s = render_slices(k, 2, RenderFormat::svg);
  CHECK(s == render_slices(k, 2, RenderFormat::svg));
  CHECK(count(s, "<g class=\"panel\"") == 2);
  CHECK(count(panel(s, -2), "<circle") == 2);
  CHECK(count(panel(s, -4), "<circle") == 0);
  CHECK(s.find("width=\"28\" height=\"28\"") != std::string::npos);

  // circle centres sit on the (2,-2) and (-2,-2) cells
  RenderConfig c;
  int qmin = k.dims.begin()->first.q, amax = INT32_MIN;
  for (auto& [x, d] : k.dims) amax = std::max(amax, x.a);
  std::string p = panel(s, -2);
  for (int q : {2, -2}) {
    int cx = c.margin + (q - qmin) / 2 * c.cell + c.cell / 2;
    CHECK(p.find("<circle cx=\"" + std::to_string(cx) + "\"") != std::string::npos);
  }
  (void)amax;

  TrigradedDims u;
  u.add({0, 0, 0}, 1);
  std::string us = render_slices(u, 0, RenderFormat::svg);
  CHECK(count(us, "<g class=\"panel\"") == 1);
  CHECK(count(us, "<circle cx=\"54\" cy=\"78\"") == 2);   // coincident
  CHECK(render_slices(u, 0, RenderFormat::ascii) == "Delta = 0\n    a\\q    0\n      0  (1)\n");
  CHECK(render_slices(u, std::nullopt, RenderFormat::ascii) == "Delta = 0\n    a\\q    0\n      0    1\n");

  auto big = load("11a263").dims;
  std::string bs = render_slices(big, -8, RenderFormat::svg);
  CHECK(count(bs, "<g class=\"panel\"") == 2);
  CHECK(count(panel(bs, 8), "<circle") == 2);
  std::string ba = render_slices(big, -8, RenderFormat::ascii);
  CHECK(count(ba.substr(ba.find("Delta = 8")), "(") == 2);
}

TEST_CASE("render config file holds the built-in constants") {
  RenderConfig c = load_render_config(std::string(TRIHOM_SOURCE_DIR) + "/config/render.json");
  RenderConfig d;
  CHECK(c.cell == 28);
  CHECK(c.cell == d.cell);
  CHECK(c.margin == d.margin);
  CHECK(c.panel_gap == d.panel_gap);
  CHECK(c.font_size == d.font_size);
  CHECK(c.circle_radius == d.circle_radius);
  CHECK(c.circle_color == d.circle_color);
  CHECK(c.grid_color == d.grid_color);
  auto tmp = std::filesystem::temp_directory_path() / "trihom_bad_render.json";
  std::ofstream(tmp) << "{\"cells\": 3}";
  CHECK_THROWS(load_render_config(tmp));
  std::filesystem::remove(tmp);
}

TEST_CASE("batch report and aggregates") {
  auto all = [](std::vector<std::string> names) {
    std::vector<KnotRecord> recs;
    std::vector<InvariantReport> reps;
    for (auto& n : names) {
      recs.push_back(load(n));
      reps.push_back(analyze(n, recs.back().dims, {}, recs.back().rasmussen_s));
    }
    return std::make_pair(recs, reps);
  };
  auto [tb, tr] = all({"3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "7_1", "7_2", "7_3", "7_4", "7_5", "7_6",
                       "7_7", "9_11", "11a85"});
  std::string doc = report_document(tb, tr);
  CHECK(doc.find("\"two-bridge\": {\n        \"1\": 16\n      }") != std::string::npos);
  CHECK(doc.find("\"2\":") == std::string::npos);

  auto [kb, kr] = all({"10_125", "11n80", "3_1"});
  std::string d2 = report_document(kb, kr);
  CHECK(d2.find("\"S_plus_s\": {\n      \"-2\": 1,\n      \"0\": 1\n    }") != std::string::npos);
  CHECK(d2.find("\"nonalternating\": {\n        \"2\": 2\n      }") != std::string::npos);
  CHECK(d2.find("\"total\": {\n        \"1\": 1,\n        \"2\": 2\n      }") != std::string::npos);

  std::string empty = report_document({}, {});
  CHECK(empty ==
        "{\n  \"reports\": [],\n  \"tables\": {\n    \"delta_thickness\": {\n      \"total\": {}\n    },\n"
        "    \"S_plus_s\": {},\n    \"dim_minus_sl2\": {}\n  }\n}\n");

  auto tmp = std::filesystem::temp_directory_path() / "trihom_report.json";
  write_report(kb, kr, tmp);
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == d2);
  std::filesystem::remove(tmp);
  CHECK_THROWS(write_report(kb, kr, "/nonexistent/dir/report.json"));
}
