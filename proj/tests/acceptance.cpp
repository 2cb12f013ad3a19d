// Acceptance run: one line per criterion, "criterion N: PASS|FAIL|SKIP".
// Exit status is 1 if any criterion fails.  Arguments pick criteria by number.
//
// Criterion 10 needs external data, given by environment variables:
//   TRIHOM_NS_DATA      NS-style polynomial list (one knot per line)
//   TRIHOM_NS_FAMILIES  "name family" per line (two-bridge, alternating, nonalternating)
//   TRIHOM_NS_S         "name s" per line, Rasmussen s

#include "trihom/dataio.hpp"
#include "trihom/invariants.hpp"
#include "trihom/parallel.hpp"
#include "trihom/skein.hpp"
#include "trihom/sl2.hpp"
#include "trihom/soergel.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace trihom;

namespace {

// Collects failed sub-checks for one criterion.
struct Verdict {
  std::vector<std::string> failures;
  std::string skip;
  std::vector<std::string> info;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

bool any_failed = false;
std::set<int> only;   // criteria named on the command line; empty runs all

void criterion(int id, const std::string& title, const std::function<void(Verdict&)>& body) {
  if (!only.empty() && !only.count(id)) return;
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.failures.push_back(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const char* status = !v.failures.empty() ? "FAIL" : !v.skip.empty() ? "SKIP" : "PASS";
  if (!v.failures.empty()) any_failed = true;
  std::ostringstream line;
  line << "criterion " << id << ": " << status << "  " << title;
  line.precision(2);
  line << std::fixed << "  [" << secs << " s]";
  if (!v.skip.empty()) line << "  (" << v.skip << ")";
  for (auto& i : v.info) line << "  " << i;
  std::cout << line.str() << "\n";
  for (size_t i = 0; i < v.failures.size() && i < 20; ++i) std::cout << "    - " << v.failures[i] << "\n";
  if (v.failures.size() > 20) std::cout << "    - ... " << v.failures.size() - 20 << " more\n";
  std::cout.flush();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int jobs() {
  if (const char* e = std::getenv("TRIHOM_JOBS")) return std::max(1, std::atoi(e));
  return std::max(1u, std::thread::hardware_concurrency());
}

ComputeOptions opts() {
  ComputeOptions o;
  o.jobs = jobs();
  return o;
}

KnotRecord fixture(const std::string& name) {
  auto recs = parse_dataset(std::string(TRIHOM_SOURCE_DIR) + "/fixtures/" + name + ".tbl");
  if (recs.size() != 1) throw std::runtime_error("fixture " + name + " holds " + std::to_string(recs.size()) + " knots");
  return recs[0];
}

int certified_S(const TrigradedDims& h) {
  auto c = certify_d1_standard(h);
  if (!c.standard()) throw std::runtime_error("not certified: " + c.reason);
  return s_invariant(h, c).S;
}

std::vector<BraidWord> all_words(int n, int maxlen) {
  std::vector<BraidWord> out;
  std::vector<int> letters;
  for (int i = 1; i < n; ++i) {
    letters.push_back(i);
    letters.push_back(-i);
  }
  std::vector<BraidWord> layer = {BraidWord{n, {}}};
  for (int len = 0; len <= maxlen; ++len) {
    out.insert(out.end(), layer.begin(), layer.end());
    if (letters.empty()) break;
    std::vector<BraidWord> next;
    for (auto& b : layer)
      for (int l : letters) {
        BraidWord c = b;
        c.word.push_back(l);
        next.push_back(c);
      }
    layer = std::move(next);
  }
  return out;
}

// The small knots computed from braids; each carries its table once computed.
struct Small {
  std::string name, braid;
  long total;
  TrigradedDims h;
};

std::vector<Small> small_knots = {
    {"unknot", "n=1:", 1, {}},
    {"unknot", "n=2: 1", 1, {}},
    {"3_1", "n=2: 1 1 1", 3, {}},
    {"3_1 mirror", "n=2: -1 -1 -1", 3, {}},
    {"4_1", "n=3: 1 -2 1 -2", 5, {}},
};

TrigradedDims& table_of(Small& k) {
  if (k.h.empty()) k.h = compute_triply_graded(parse_braid(k.braid), opts());
  return k.h;
}

std::map<std::string, std::string> read_pairs(const char* path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error(std::string("cannot open ") + path);
  std::map<std::string, std::string> m;
  std::string line;
  while (std::getline(f, line)) {
    std::istringstream ss(line);
    std::string a, b;
    if (ss >> a >> b && a[0] != '#') m[a] = b;
  }
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  std::cout << "trihom acceptance, jobs=" << jobs() << "\n";

  criterion(1, "unknot on one and two strands", [](Verdict& v) {
    TrigradedDims want;
    want.add({0, 0, 0}, 1);
    for (auto* b : {"n=1:", "n=2: 1", "n=2: -1"}) {
      auto t0 = std::chrono::steady_clock::now();
      auto h = compute_triply_graded(parse_braid(b), opts());
      double s = seconds_since(t0);
      v.require(h == want, std::string(b) + ": table is not {(0,0,0) -> 1}");
      v.require(s < 1.0, std::string(b) + ": took " + std::to_string(s) + " s");
    }
  });

  criterion(2, "trefoils and figure-eight are thin reconstructions", [](Verdict& v) {
    for (auto& k : small_knots) {
      if (k.total == 1) continue;
      BraidWord b = parse_braid(k.braid);
      auto t0 = std::chrono::steady_clock::now();
      auto& h = table_of(k);
      double s = seconds_since(t0);
      LaurentPoly2 P = homfly_poly(b);
      v.require(h.delta_support().size() == 1, k.name + ": not thin");
      v.require(h == thin_reconstruction(P, signature(b)), k.name + ": differs from the thin reconstruction");
      v.require(h.euler() == P, k.name + ": P(q,a,-1) differs from the skein polynomial");
      v.require(h.total() == k.total, k.name + ": total " + std::to_string(h.total()));
      v.require(s < 300, k.name + ": took " + std::to_string(s) + " s");
    }
  });

  criterion(3, "Markov invariance over three stabilized presentations", [](Verdict& v) {
    Potential x = Potential::parse("x"), x2x = Potential::parse("x^2-x");
    for (auto& k : small_knots) {
      if (k.braid == "n=2: 1") continue;   // already a stabilization of n=1
      BraidWord b = parse_braid(k.braid);
      auto base = table_of(k);
      int S = certified_S(base);
      auto js = j_and_s(compute_deformed(b, x2x, opts()));
      std::vector<BraidWord> pres = {stabilize(b, 1), stabilize(b, -1), rotate(stabilize(stabilize(b, 1), -1))};
      for (auto& p : pres) {
        std::string tag = k.name + " as " + p.to_string();
        auto h = compute_triply_graded(p, opts());
        v.require(h == base, tag + ": triply graded table differs");
        v.require(homfly_poly(p) == homfly_poly(b), tag + ": skein polynomial differs");
        v.require(signature(p) == signature(b), tag + ": signature differs");
        v.require(certified_S(h) == S, tag + ": S differs");
        auto f1 = compute_deformed(p, x, opts());
        v.require(f1.positions == std::vector<Tri>{Tri{S, -S, -S}}, tag + ": sl(1) survivor moved");
        auto js2 = j_and_s(compute_deformed(p, x2x, opts()));
        v.require(js2.j == js.j && js2.s == js.s, tag + ": j or s for x^2-x differs");
      }
    }
  });

  criterion(4, "identity suite on all words of length <= 4 on <= 3 strands", [](Verdict& v) {
    std::vector<Potential> pots;
    for (auto* s : {"x", "x^2", "x^2-x", "x^3"}) pots.push_back(Potential::parse(s));
    std::vector<BraidWord> words;
    for (int n = 1; n <= 3; ++n)
      for (auto& b : all_words(n, 4)) words.push_back(b);
    std::vector<std::vector<std::string>> bad(words.size());
    std::vector<size_t> counts(words.size());
    detail::parallel_for(words.size(), jobs(), [&](size_t i) {
      try {
        auto cs = identity_checks(words[i], pots);
        counts[i] = cs.size();
        for (auto& c : cs)
          if (!c.ok) bad[i].push_back(words[i].to_string() + ": " + c.name + " " + c.detail);
      } catch (const std::exception& e) {
        bad[i].push_back(words[i].to_string() + ": " + e.what());
      }
    });
    size_t n = 0;
    for (size_t i = 0; i < words.size(); ++i) {
      n += counts[i];
      for (auto& b : bad[i]) v.failures.push_back(b);
    }
    v.require(words.size() == 1 + 31 + 341, "word count " + std::to_string(words.size()));
    v.info.push_back(std::to_string(words.size()) + " words, " + std::to_string(n) + " identities");
  });

  criterion(5, "symmetry, unimodality, hard Lefschetz, sl(2) brackets, super differentials", [](Verdict& v) {
    Potential x = Potential::parse("x");
    for (auto& k : small_knots) {
      BraidWord b = parse_braid(k.braid);
      auto st = structure_checks(table_of(k));
      v.require(st.symmetric, k.name + ": not symmetric");
      v.require(st.unimodal, k.name + ": not unimodal");
      HomologyModel M(b, &x, opts());
      SL2Action e = action_from_model(M);
      std::string why;
      v.require(hard_lefschetz(e, &why), k.name + ": hard Lefschetz fails " + why);
      SL2Action act = solve_F(e);
      for (auto& c : bracket_checks(act)) v.require(c.ok, k.name + ": " + c.name);
      auto sd = super_differentials(act, M.induce_dW(), 1);
      for (auto& c : sd.checks) v.require(c.ok, k.name + ": " + c.name);
      v.require(sd.d_minus1.has_value(), k.name + ": no d_-1");
    }
    for (auto& f : action_fixtures()) {
      std::string why;
      v.require(hard_lefschetz(f.action, &why), f.knot + ": hard Lefschetz fails " + why);
      SL2Action act = solve_F(f.action);
      for (auto& c : bracket_checks(act)) v.require(c.ok, f.knot + ": " + c.name);
      for (auto& [N, dN] : f.d) {
        auto sd = super_differentials(act, dN, N);
        for (auto& c : sd.checks) v.require(c.ok, f.knot + " N=" + std::to_string(N) + ": " + c.name);
      }
    }
  });

  criterion(6, "sl(1) homology is one class at (0,0) and sits at (S,-S,-S)", [](Verdict& v) {
    Potential x = Potential::parse("x");
    for (auto& k : small_knots) {
      auto f = compute_deformed(parse_braid(k.braid), x, opts());
      v.require(f.total() == 1 && f.dims.count({0, 0}) == 1, k.name + ": not one-dimensional at (0,0)");
      int S = certified_S(table_of(k));
      v.require(f.positions == std::vector<Tri>{Tri{S, -S, -S}}, k.name + ": survivor not at (S,-S,-S)");
    }
  });

  criterion(7, "sl(2) deformation of the trefoil", [](Verdict& v) {
    for (auto* s : {"n=2: -1 -1 -1", "n=2: 1 1 1"}) {
      BraidWord b = parse_braid(s);
      auto F = compute_deformed(b, Potential::parse("x^2"), opts());
      std::map<int, Rat> chi, spec;
      for (auto& [k, d] : F.dims) chi[k.first] += (k.second % 2) ? -d : d;
      LaurentPoly2 P = homfly_poly(b);
      for (auto& [k, c] : P.terms()) spec[k.first + 2 * k.second] += c;
      std::erase_if(chi, [](auto& e) { return e.second == 0; });
      std::erase_if(spec, [](auto& e) { return e.second == 0; });
      v.require(chi == spec, std::string(s) + ": Euler characteristic is not P(q, q^2)");
      int S = certified_S(compute_triply_graded(b, opts()));
      auto js = j_and_s(compute_deformed(b, Potential::parse("x^2-x"), opts()));
      v.require(js.s * 2 == Rat(-S), std::string(s) + ": s = " + Rat(js.s * 2).get_str() + ", S = " + std::to_string(S));
    }
  });

  criterion(8, "S, s and j on the transcribed figure fixtures", [](Verdict& v) {
    struct Row {
      const char* knot;
      int S;
    };
    for (auto r : {Row{"11n80", 2}, Row{"11a85", -2}, Row{"11a263", -8}, Row{"9_42", 0}, Row{"10_125", 0},
                   Row{"11n135", -4}, Row{"9_11", 4}}) {
      int S = certified_S(fixture(r.knot).dims);
      v.require(S == r.S, std::string(r.knot) + ": S = " + std::to_string(S));
    }
    auto k942 = fixture("9_42");
    v.require(k942.braid && signature(parse_braid(*k942.braid)) == 2, "9_42: signature is not 2");

    auto f = fixture_10_125();
    v.require(f.s == Rat(-2), "10_125: fixture s is " + f.s.get_str());
    auto m2 = deform_model(f.action.basis, f.d, Potential::parse("x^2-x"));
    v.require(m2.s * 2 == Rat(-2), "10_125: 2 s_{x^2-x} = " + Rat(m2.s * 2).get_str());
    auto m3 = deform_model(f.action.basis, f.d, Potential::parse("x^3-x"));
    v.require(m3.s == 0, "10_125: s_{x^3-x} = " + m3.s.get_str());
    v.require(slN_collapse(fixture("10_125").dims, 3, 0).s == 0, "10_125: sl(3) collapse s != 0");
    // x^3 - 1 with its root moved to 0
    auto t3 = deform_model(f.action.basis, f.d, Potential::parse("x^3+3x^2+3x"));
    v.require(t3.s == Rat(-1, 2), "10_125: s_{x^3-1} = " + t3.s.get_str());

    auto g = fixture_11n135();
    v.require(g.s == Rat(4), "11n135: fixture s is " + g.s.get_str());
    auto n2 = deform_model(g.action.basis, g.d, Potential::parse("x^2-x"));
    v.require(n2.s * 2 == Rat(4), "11n135: 2 s_{x^2-x} = " + Rat(n2.s * 2).get_str());

    auto c911 = slN_collapse(fixture("9_11").dims, 3, 4);
    v.require(c911.j == -8, "9_11: j_{x^3-x} = " + std::to_string(c911.j));
    v.require(c911.s == Rat(-2), "9_11: s_{x^3-x} = " + c911.s.get_str());
  });

  criterion(9, "certifier on the seventeen exceptional fixtures", [](Verdict& v) {
    struct Row {
      const char* knot;
      int qK, aK, S;
    };
    for (auto r : {Row{"10_128", -4, 10, -6}, Row{"11n9", -4, 8, -6}, Row{"11n16", -4, 8, -4}, Row{"11n39", -4, 2, 0},
                   Row{"11n45", -4, 2, 0}, Row{"11n57", -4, 8, -6}, Row{"11n61", -4, 6, -4}, Row{"11n64", -4, 6, -4},
                   Row{"11n104", -4, 8, -6}, Row{"11n126", -4, 10, -6}, Row{"11n133", -4, 6, -4},
                   Row{"11n145", -4, 2, 0}, Row{"11n155", -4, 4, -2}}) {
      std::string k = r.knot;
      auto h = fixture(k).dims;
      auto c = certify_d1_standard(h);
      v.require(c.standard(), k + ": " + to_string(c.status));
      bool located = c.potential.size() == 1 && c.potential[0].page == 2 && c.potential[0].source.q == r.qK &&
                     c.potential[0].source.a == r.aK;
      v.require(located, k + ": potential d_1^(2) not located at (q_K, a_K)");
      v.require(c.S && *c.S == r.S, k + ": S mismatch");
    }
    auto qad = [](int q, int a, int d) { return Tri{q, a, d - q - a}; };
    struct Empty {
      const char* knot;
      std::set<Tri> cells;
      bool lower;
    };
    for (auto& r : {Empty{"10_136", {qad(4, -4, -2)}, true},
                    Empty{"11n12", {qad(4, 0, 0), qad(2, -2, 0), qad(6, -2, 0)}, true},
                    Empty{"11n20", {qad(4, -4, -2)}, true}, Empty{"11n79", {qad(-4, 4, 2)}, false}}) {
      std::string k = r.knot;
      auto h = fixture(k).dims;
      auto c = certify_d1_standard(h);
      v.require(c.standard() && c.potential.empty(), k + ": not standard through empty cells");
      std::set<Tri> ends;
      for (auto& b : c.blocked) {
        const Tri& x = r.lower ? b.target : b.source;
        if (!h.at(x)) ends.insert(x);
      }
      v.require(ends == r.cells, k + ": empty cells differ");
    }
  });

  criterion(10, "external NS data: Delta-thickness and S versus s tables", [](Verdict& v) {
    const char* data = std::getenv("TRIHOM_NS_DATA");
    const char* fam = std::getenv("TRIHOM_NS_FAMILIES");
    const char* svals = std::getenv("TRIHOM_NS_S");
    if (!data || !fam || !svals) {
      v.skip = "set TRIHOM_NS_DATA, TRIHOM_NS_FAMILIES and TRIHOM_NS_S to run";
      return;
    }
    std::ifstream in(data);
    if (!in) throw std::runtime_error(std::string("cannot open ") + data);
    std::stringstream ss;
    ss << in.rdbuf();
    NsImport imp = import_ns_format(ss.str());
    for (auto& e : imp.errors) v.failures.push_back(std::string("import: ") + e);
    auto families = read_pairs(fam);
    auto s_table = read_pairs(svals);

    std::map<int, int> thick;
    int two_bridge_thick = 0, alt_thick = 0;
    bool saw_11a263 = false;
    std::map<int, int> s_sum;
    for (auto& r : imp.records) {
      auto p = delta_profile(r.dims);
      ++thick[p.thickness];
      auto f = families.find(r.name);
      if (f == families.end()) {
        v.failures.push_back(r.name + ": no family");
        continue;
      }
      if (p.thin) continue;
      if (f->second == "two-bridge") ++two_bridge_thick;
      if (f->second == "alternating") {
        ++alt_thick;
        saw_11a263 = saw_11a263 || r.name == "11a263";
      }
      auto c = certify_d1_standard(r.dims);
      auto s = s_table.find(r.name);
      if (!c.standard()) {
        v.failures.push_back(r.name + ": S undetermined");
      } else if (s == s_table.end()) {
        v.failures.push_back(r.name + ": no s value");
      } else {
        ++s_sum[s_invariant(r.dims, c).S + std::stoi(s->second)];
      }
    }
    v.require(imp.records.size() == 695, "knot count " + std::to_string(imp.records.size()));
    v.require(thick[1] == 603 && thick[2] == 92,
              "thickness 1: " + std::to_string(thick[1]) + ", thickness 2: " + std::to_string(thick[2]));
    v.require(two_bridge_thick == 0, "two-bridge knots off the thin locus: " + std::to_string(two_bridge_thick));
    v.require(alt_thick == 1 && saw_11a263, "non-thin alternating knots: " + std::to_string(alt_thick));
    v.require(s_sum == std::map<int, int>{{-2, 1}, {0, 90}, {2, 1}}, "S + s buckets differ");
  });

  return any_failed ? 1 : 0;
}
