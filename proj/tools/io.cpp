#include "io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "clusterforge/errors.hpp"

namespace cfio {

json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Integer integer_from(const json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    Integer z;
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || z.set_str(s, 10) != 0) throw ParseError("not an integer: \"" + s + "\"");
    return z;
  }
  throw ParseError("expected an integer, got " + j.dump());
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from(const json& j, std::size_t cols_hint) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  std::size_t cols = cols_hint;
  if (!j.empty()) {
    if (!j[0].is_array()) throw ParseError("matrix rows must be arrays");
    cols = j[0].size();
  }
  IntMatrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError("ragged matrix at row " + std::to_string(i + 1));
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = integer_from(j[i][c]);
  }
  return m;
}

json quiver_json(const Quiver& q) {
  json d = json::array();
  for (const auto& x : q.symmetrizer()) d.push_back(integer_json(x));
  return {{"m", q.m()}, {"n", q.n()}, {"matrix", matrix_json(q.matrix())}, {"symmetrizer", d}};
}

Quiver quiver_from(const json& j) {
  if (!j.is_object() || !j.contains("matrix")) throw ParseError("quiver JSON needs a \"matrix\"");
  std::size_t n_hint = j.contains("n") && j["n"].is_number_unsigned() ? j["n"].get<std::size_t>() : 0;
  IntMatrix b = matrix_from(j["matrix"], n_hint);
  auto field = [&](const char* key, std::size_t actual) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_unsigned() || j[key].get<std::size_t>() != actual)
      throw InvalidQuiver(std::string("\"") + key + "\" disagrees with the matrix shape");
  };
  field("m", b.rows());
  field("n", b.cols());
  if (b.rows() < b.cols()) throw InvalidQuiver("fewer rows than columns");
  std::vector<Integer> d;
  if (j.contains("symmetrizer") && !j["symmetrizer"].is_null()) {
    if (!j["symmetrizer"].is_array()) throw ParseError("symmetrizer must be an array");
    for (const auto& x : j["symmetrizer"]) d.push_back(integer_from(x));
  }
  return Quiver(std::move(b), std::move(d));
}

json qp_json(const QuiverWithPotential& qp) {
  json arrows = json::array();
  for (const auto& a : qp.arrows()) arrows.push_back({{"name", a.name}, {"from", a.source + 1}, {"to", a.target + 1}});
  json pot = json::array();
  for (const auto& [w, c] : qp.potential()) pot.push_back({{"cycle", qp.cycle_names(w)}, {"coeff", c.get_str()}});
  return {{"vertices", qp.vertices()}, {"arrows", arrows}, {"potential", pot}, {"truncation", qp.truncation()}};
}

namespace {

std::size_t unsigned_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned()) throw ParseError(std::string("expected a non-negative \"") + key + "\"");
  return j[key].get<std::size_t>();
}

Rational rational_from(const json& j) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (!j.is_string()) throw ParseError("coefficient must be an integer or a \"p/q\" string");
  Rational r;
  const auto& s = j.get_ref<const std::string&>();
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0) throw ParseError("bad rational \"" + s + "\"");
  r.canonicalize();
  return r;
}

}  // namespace

QuiverWithPotential qp_from(const json& j) {
  if (!j.is_object()) throw ParseError("QP JSON must be an object");
  std::size_t n = unsigned_field(j, "vertices");
  std::vector<QpArrow> arrows;
  if (j.contains("arrows")) {
    if (!j["arrows"].is_array()) throw ParseError("\"arrows\" must be an array");
    for (const auto& a : j["arrows"]) {
      if (!a.is_object() || !a.contains("name") || !a["name"].is_string()) throw ParseError("arrow needs a \"name\"");
      std::size_t s = unsigned_field(a, "from"), t = unsigned_field(a, "to");
      if (s == 0 || t == 0 || s > n || t > n) throw VertexOutOfRange("arrow " + a["name"].get<std::string>() + " leaves 1.." + std::to_string(n));
      arrows.push_back({a["name"].get<std::string>(), s - 1, t - 1});
    }
  }
  std::size_t trunc = j.contains("truncation") ? unsigned_field(j, "truncation") : 12;
  QuiverWithPotential qp(n, std::move(arrows), trunc);
  if (j.contains("potential")) {
    if (!j["potential"].is_array()) throw ParseError("\"potential\" must be an array");
    for (const auto& term : j["potential"]) {
      if (!term.is_object() || !term.contains("cycle") || !term["cycle"].is_array())
        throw ParseError("potential term needs a \"cycle\" list");
      std::vector<std::string> names;
      for (const auto& x : term["cycle"]) {
        if (!x.is_string()) throw ParseError("cycle entries are arrow names");
        names.push_back(x.get<std::string>());
      }
      qp.add_cycle(names, term.contains("coeff") ? rational_from(term["coeff"]) : Rational(1));
    }
  }
  return qp;
}

json series_json(const TruncatedSeries& s) {
  json terms = json::array();
  for (const auto& [a, c] : s.terms()) terms.push_back({{"alpha", a}, {"coeff", c.to_string()}});
  return {{"form", matrix_json(s.form())}, {"N", s.order()}, {"terms", terms}};
}

TruncatedSeries series_from(const json& j) {
  if (!j.is_object() || !j.contains("form")) throw ParseError("series JSON needs a \"form\"");
  TruncatedSeries s(matrix_from(j["form"]), unsigned_field(j, "N"));
  if (j.contains("terms")) {
    for (const auto& t : j["terms"]) {
      if (!t.contains("alpha") || !t.contains("coeff") || !t["coeff"].is_string()) throw ParseError("series term needs alpha and coeff");
      s.add_term(t["alpha"].get<Exponents>(), QCoefficient::parse(t["coeff"].get<std::string>()));
    }
  }
  return s;
}

namespace {

void emit(const json& j, std::string& out) {
  if (j.is_object()) {
    out += '{';
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ", ";
      first = false;
      out += json(it.key()).dump();
      out += ": ";
      emit(it.value(), out);
    }
    out += '}';
  } else if (j.is_array()) {
    out += '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      emit(j[i], out);
    }
    out += ']';
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string canonical(const json& j) {
  std::string out;
  emit(j, out);
  return out;
}

std::optional<std::vector<std::size_t>> parse_sequence(const std::string& text) {
  std::vector<std::size_t> seq;
  std::string tok;
  auto flush = [&]() {
    if (tok.empty()) return true;
    if (!std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); })) return false;
    if (tok.size() > 9) return false;
    std::size_t k = std::stoul(tok);
    if (k == 0) return false;
    seq.push_back(k - 1);
    tok.clear();
    return true;
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!flush()) return std::nullopt;
    } else {
      tok += c;
    }
  }
  if (!flush()) return std::nullopt;
  return seq;
}

json sequence_json(const std::vector<std::size_t>& zero_based) {
  json a = json::array();
  for (auto k : zero_based) a.push_back(k + 1);
  return a;
}

std::string quiver_dot(const Quiver& q) {
  std::ostringstream os;
  os << "digraph quiver {\n";
  for (std::size_t v = 0; v < q.m(); ++v) {
    os << "  " << v + 1;
    if (v >= q.n()) os << " [shape=box]";
    os << ";\n";
  }
  for (const auto& a : presentation_of(q).arrows) {
    os << "  " << a.source + 1 << " -> " << a.target + 1;
    if (a.v1 != 1 || a.v2 != 1) os << " [label=\"(" << a.v1.get_str() << "," << a.v2.get_str() << ")\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string matrix_table(const IntMatrix& m) {
  std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
  std::size_t w = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) w = std::max(w, (cells[i][j] = m(i, j).get_str()).size());
  std::string out;
  for (const auto& row : cells) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ' ';
      out += std::string(w - row[j].size(), ' ') + row[j];
    }
    out += '\n';
  }
  return out;
}

namespace {

bool is_matrix(const json& j) {
  return j.is_array() && !j.empty() && std::all_of(j.begin(), j.end(), [](const json& r) {
           return r.is_array() && std::all_of(r.begin(), r.end(), [](const json& x) { return x.is_number() || x.is_string(); });
         });
}

std::string scalar(const json& j) { return j.is_string() ? j.get<std::string>() : canonical(j); }

}  // namespace

std::string table(const json& j) {
  if (!j.is_object()) return scalar(j) + "\n";
  std::string out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (is_matrix(v)) {
      out += it.key() + ":\n";
      for (const auto& row : v) {
        out += ' ';
        for (const auto& x : row) out += ' ' + scalar(x);
        out += '\n';
      }
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_string(); })) {
      out += it.key() + ":\n";
      for (const auto& x : v) out += "  " + x.get<std::string>() + "\n";
    } else {
      out += it.key() + "\t" + scalar(v) + "\n";
    }
  }
  return out;
}

std::vector<std::string> names(const std::string& stem, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

}  // namespace cfio
