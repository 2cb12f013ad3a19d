#include "trihom/dataio.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace trihom {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

long to_long(const std::string& s) {
  size_t used = 0;
  long v = std::stol(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
  return v;
}

// one term: [c][*]q^i*a^j*t^k in any order
void parse_term(const std::string& term, TrigradedDims& out) {
  size_t p = 0;
  auto skip = [&] {
    while (p < term.size() && (term[p] == ' ' || term[p] == '\t' || term[p] == '*')) ++p;
  };
  auto integer = [&]() -> long {
    size_t b = p;
    if (p < term.size() && (term[p] == '-' || term[p] == '+')) ++p;
    while (p < term.size() && std::isdigit(static_cast<unsigned char>(term[p]))) ++p;
    if (b == p || (p == b + 1 && !std::isdigit(static_cast<unsigned char>(term[b]))))
      throw std::invalid_argument("expected an integer in '" + term + "'");
    return to_long(term.substr(b, p - b));
  };
  skip();
  long c = 1;
  if (p < term.size() && std::isdigit(static_cast<unsigned char>(term[p]))) c = integer();
  int e[3] = {0, 0, 0};
  bool seen[3] = {false, false, false};
  for (skip(); p < term.size(); skip()) {
    int v = std::string("qat").find(term[p]);
    if (v < 0) throw std::invalid_argument("unexpected '" + std::string(1, term[p]) + "' in '" + term + "'");
    if (seen[v]) throw std::invalid_argument("repeated variable in '" + term + "'");
    seen[v] = true;
    ++p;
    e[v] = 1;
    if (p < term.size() && term[p] == '^') {
      ++p;
      char close = 0;
      if (p < term.size() && (term[p] == '(' || term[p] == '{')) close = term[p++] == '(' ? ')' : '}';
      e[v] = static_cast<int>(integer());
      if (close) {
        if (p >= term.size() || term[p] != close) throw std::invalid_argument("unbalanced exponent in '" + term + "'");
        ++p;
      }
    }
  }
  if (c <= 0) throw std::invalid_argument("coefficient must be positive in '" + term + "'");
  out.add({e[0], e[1], e[2]}, c);
}

void check_record(const KnotRecord& r, const std::string& source, int line) {
  if (r.dims.empty()) throw ParseError(source, line, "knot " + r.name + " has no entries");
  if (!r.dims.all_even()) {
    for (auto& [x, d] : r.dims.dims)
      if (x.q % 2 || x.a % 2 || x.t % 2)
        throw ParseError(source, line,
                         "knot " + r.name + ": odd grading q=" + std::to_string(x.q) + " a=" + std::to_string(x.a) +
                             " t=" + std::to_string(x.t));
  }
}

}  // namespace

TrigradedDims parse_poincare(const std::string& expr) {
  TrigradedDims h;
  std::string s = trim(expr);
  // strip a leading "P =" or similar
  if (auto eq = s.find('='); eq != std::string::npos) s = s.substr(eq + 1);
  // split on '+' outside exponents; a '-' there would be a negative coefficient
  std::string cur;
  int depth = 0;
  char prev = 0;
  for (char ch : s + "+") {
    if (ch == '(' || ch == '{') ++depth;
    if (ch == ')' || ch == '}') --depth;
    if (depth == 0 && prev != '^' && (ch == '+' || ch == '-')) {
      if (ch == '-') throw std::invalid_argument("negative coefficient");
      if (!trim(cur).empty()) parse_term(cur, h);
      cur.clear();
    } else {
      cur += ch;
    }
    if (ch != ' ') prev = ch;
  }
  if (depth != 0) throw std::invalid_argument("unbalanced brackets");
  return h;
}

std::string format_poincare(const TrigradedDims& h) {
  std::ostringstream os;
  bool first = true;
  for (auto& [x, d] : h.dims) {
    os << (first ? "" : " + ");
    first = false;
    if (d != 1) os << d << "*";
    os << "q^" << x.q << "*a^" << x.a << "*t^" << x.t;
  }
  if (first) os << "0";
  return os.str();
}

std::vector<KnotRecord> parse_dataset_text(const std::string& text, const std::string& source) {
  std::vector<KnotRecord> out;
  std::istringstream in(text);
  std::string raw;
  int ln = 0, start = 0;
  std::vector<std::string> pending;   // comments seen before a knot line
  bool poly_open = false;
  std::string poly;
  int poly_line = 0;

  auto flush_poly = [&] {
    if (!poly_open) return;
    poly_open = false;
    try {
      TrigradedDims p = parse_poincare(poly);
      for (auto& [x, d] : p.dims) out.back().dims.add(x, d);
    } catch (const std::exception& e) {
      throw ParseError(source, poly_line, e.what());
    }
  };
  auto close = [&] {
    flush_poly();
    if (!out.empty()) check_record(out.back(), source, start);
  };

  while (std::getline(in, raw)) {
    ++ln;
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      pending.push_back(trim(line.substr(1)));
      continue;
    }
    if (poly_open && line[0] == '+') {
      poly += " " + line;
      continue;
    }
    flush_poly();
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    std::string rest = trim(line.substr(key.size()));
    try {
      if (key == "knot") {
        close();
        if (rest.empty()) throw std::invalid_argument("knot needs a name");
        out.push_back({});
        out.back().name = rest;
        out.back().comments = std::move(pending);
        pending.clear();
        start = ln;
        continue;
      }
      if (out.empty()) throw std::invalid_argument("'" + key + "' before any knot line");
      KnotRecord& r = out.back();
      if (!pending.empty()) {
        r.comments.insert(r.comments.end(), pending.begin(), pending.end());
        pending.clear();
      }
      if (key == "entry") {
        int q = 0, a = 0, t = 0;
        long d = 0;
        int got = 0;
        std::string f;
        while (ls >> f) {
          auto eq = f.find('=');
          if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + f + "'");
          std::string k = f.substr(0, eq);
          long v = to_long(f.substr(eq + 1));
          if (k == "q") q = static_cast<int>(v), got |= 1;
          else if (k == "a") a = static_cast<int>(v), got |= 2;
          else if (k == "t") t = static_cast<int>(v), got |= 4;
          else if (k == "dim") d = v, got |= 8;
          else throw std::invalid_argument("unknown field '" + k + "'");
        }
        if (got != 15) throw std::invalid_argument("entry needs q, a, t and dim");
        if (d <= 0) throw std::invalid_argument("dimension must be positive");
        if (q % 2 || a % 2 || t % 2) throw std::invalid_argument("odd grading in a knot table");
        r.dims.add({q, a, t}, d);
      } else if (key == "P" || key.rfind("P=", 0) == 0) {
        poly_open = true;
        poly = line;
        poly_line = ln;
      } else if (key == "convention") {
        if (rest != "NS") throw std::invalid_argument("unsupported convention '" + rest + "'");
      } else if (key == "braid") {
        r.braid = rest;
      } else if (key == "family") {
        r.family = rest;
      } else if (key == "signature") {
        r.signature = static_cast<int>(to_long(rest));
      } else if (key == "rasmussen_s") {
        r.rasmussen_s = static_cast<int>(to_long(rest));
      } else if (key == "sl2_dim") {
        r.sl2_dim = to_long(rest);
      } else {
        throw std::invalid_argument("unknown line '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(source, ln, e.what());
    }
  }
  close();
  return out;
}

std::vector<KnotRecord> parse_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dataset_text(ss.str(), path.string());
}

std::string format_record(const KnotRecord& r) {
  std::ostringstream os;
  for (auto& c : r.comments) os << "# " << c << "\n";
  os << "knot " << r.name << "\nconvention NS\n";
  if (r.braid) os << "braid " << *r.braid << "\n";
  if (r.family) os << "family " << *r.family << "\n";
  if (r.signature) os << "signature " << *r.signature << "\n";
  if (r.rasmussen_s) os << "rasmussen_s " << *r.rasmussen_s << "\n";
  if (r.sl2_dim) os << "sl2_dim " << *r.sl2_dim << "\n";
  for (auto& [x, d] : r.dims.dims) os << "entry q=" << x.q << " a=" << x.a << " t=" << x.t << " dim=" << d << "\n";
  return os.str();
}

NsImport import_ns_format(const std::string& text) {
  NsImport r;
  std::istringstream in(text);
  std::string raw;
  int ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    size_t sep = line.find_first_of(":,\t ");
    if (sep == std::string::npos) {
      r.errors.push_back("line " + std::to_string(ln) + ": no separator after the knot name");
      continue;
    }
    KnotRecord k;
    k.name = line.substr(0, sep);
    try {
      k.dims = parse_poincare(line.substr(sep + 1));
      if (k.dims.empty()) throw std::invalid_argument("empty polynomial");
      if (!k.dims.all_even()) throw std::invalid_argument("odd grading");
    } catch (const std::exception& e) {
      r.errors.push_back("line " + std::to_string(ln) + ": " + e.what());
      continue;
    }
    r.records.push_back(std::move(k));
  }
  return r;
}

}  // namespace trihom
