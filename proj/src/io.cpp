#include "eja/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "eja/errors.hpp"

namespace eja {

namespace {

std::size_t parse_size(const std::string& s, const std::string& whole) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ArgumentError("bad algebra spec '" + whole + "': expected a positive integer, got '" + s + "'");
  return static_cast<std::size_t>(std::stoul(s));
}

AlgebraDescriptor parse_simple(const std::string& s, const std::string& whole) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ArgumentError("bad algebra spec '" + whole + "'");
  const std::string kind = s.substr(0, colon);
  const std::size_t n = parse_size(s.substr(colon + 1), whole);
  if (kind == "sym") return AlgebraDescriptor::sym(n);
  if (kind == "spin") return AlgebraDescriptor::spin(n);
  throw ArgumentError("bad algebra spec '" + whole + "': unknown kind '" + kind + "'");
}

}  // namespace

AlgebraDescriptor parse_descriptor(const std::string& spec) {
  if (spec.rfind("sum:", 0) == 0) {
    std::vector<AlgebraDescriptor> factors;
    std::stringstream ss(spec.substr(4));
    std::string part;
    while (std::getline(ss, part, '+')) factors.push_back(parse_simple(part, spec));
    if (factors.empty()) throw ArgumentError("bad algebra spec '" + spec + "': empty sum");
    return AlgebraDescriptor::direct_sum(factors);
  }
  return parse_simple(spec, spec);
}

Json number_to_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
  }
  throw ArgumentError("expected a number, got " + j.dump());
}

Json descriptor_to_json(const AlgebraDescriptor& d) {
  Json j;
  switch (d.kind()) {
    case AlgebraKind::SymMatrix:
      j["kind"] = "sym";
      j["n"] = d.order();
      break;
    case AlgebraKind::SpinFactor:
      j["kind"] = "spin";
      j["n"] = d.order();
      break;
    case AlgebraKind::DirectSum: {
      j["kind"] = "sum";
      Json f = Json::array();
      for (const auto& p : d.factors()) f.push_back(descriptor_to_json(*p));
      j["factors"] = std::move(f);
      break;
    }
  }
  return j;
}

AlgebraDescriptor descriptor_from_json(const Json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "sym") return AlgebraDescriptor::sym(j.at("n").get<std::size_t>());
    if (kind == "spin") return AlgebraDescriptor::spin(j.at("n").get<std::size_t>());
    if (kind == "sum") {
      std::vector<AlgebraDescriptor> f;
      for (const auto& p : j.at("factors")) f.push_back(descriptor_from_json(p));
      return AlgebraDescriptor::direct_sum(f);
    }
    throw ArgumentError("unknown algebra kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed descriptor JSON: ") + e.what());
  }
}

Json element_to_json(const Element& x) {
  Json j = descriptor_to_json(x.descriptor());
  j["coords"] = std::vector<double>(x.coords().begin(), x.coords().end());
  return j;
}

Element element_from_json(const Json& j) {
  const AlgebraDescriptor d = descriptor_from_json(j);
  try {
    std::vector<double> c;
    for (const auto& v : j.at("coords")) c.push_back(number_from_json(v));
    return Element(d, std::move(c));
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed element JSON: ") + e.what());
  }
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ArgumentError("matrix JSON: expected a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  if (cols == 0) throw ArgumentError("matrix JSON: rows must be non-empty arrays");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ArgumentError("matrix JSON: ragged rows");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = number_from_json(j[i][k]);
  }
  return m;
}

SchurMatrix schur_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ArgumentError("matrix CSV: bad cell '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ArgumentError("matrix CSV: empty");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw ArgumentError("matrix CSV: ragged rows");
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = rows[i][k];
  }
  return SchurMatrix(std::move(m), 1e-12);
}

SchurMatrix schur_from_json(const Json& j) { return SchurMatrix(matrix_from_json(j), 1e-12); }

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

SchurMatrix load_schur_matrix(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    try {
      Json j = Json::parse(text);
      if (j.is_object()) j = j.at("matrix");
      return schur_from_json(j);
    } catch (const nlohmann::json::exception& e) {
      throw ArgumentError("matrix JSON: " + std::string(e.what()));
    }
  }
  return schur_from_csv(text);
}

Json witness_to_json(const Witness& wit) {
  Json w = Json::object();
  for (const auto& [name, x] : wit.elements) w["elements"][name] = element_to_json(x);
  for (const auto& [name, v] : wit.vectors) {
    Json arr = Json::array();
    for (double t : v) arr.push_back(number_to_json(t));
    w["vectors"][name] = std::move(arr);
  }
  for (const auto& [name, v] : wit.scalars) w["scalars"][name] = number_to_json(v);
  if (wit.matrix) w["matrix"] = matrix_to_json(*wit.matrix);
  return w;
}

Json report_to_json(const VerificationReport& r) {
  Json j;
  j["check"] = r.check;
  j["descriptor"] = r.descriptor;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["pass"] = r.pass;
  j["worst_slack"] = number_to_json(r.worst_slack);
  Json items = Json::array();
  for (const auto& it : r.items) {
    Json ji;
    ji["label"] = it.label;
    ji["kind"] = it.kind;
    ji["holds"] = it.holds;
    ji["slack"] = number_to_json(it.slack);
    ji["threshold"] = number_to_json(it.threshold);
    if (it.failing_k) ji["failing_k"] = *it.failing_k;
    items.push_back(std::move(ji));
  }
  j["items"] = std::move(items);
  if (r.witness) {
    Json w = witness_to_json(*r.witness);
    if (r.witness_sample) w["sample"] = *r.witness_sample;
    j["witness"] = std::move(w);
  }
  if (r.near_equalities > 0) {
    Json ne;
    ne["count"] = r.near_equalities;
    ne["max_slack"] = kNearEquality;
    if (r.near_equality_sample) ne["sample"] = *r.near_equality_sample;
    if (r.near_equality) ne["witness"] = witness_to_json(*r.near_equality);
    j["near_equality"] = std::move(ne);
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json record_to_json(const SearchRecord& r) {
  Json j;
  j["family"] = to_string(r.family);
  j["n"] = r.a.n();
  j["variant"] = r.variant == Variant::Absolute ? "absolute" : "cone";
  j["verdict"] = r.violated ? "violated" : "satisfied";
  j["margin"] = number_to_json(r.margin);
  j["threshold"] = number_to_json(r.threshold);
  j["seed"] = r.seed;
  j["a_index"] = r.a_index;
  j["b_index"] = r.b_index;
  j["zero_diagonal"] = r.zero_diagonal;
  j["A"] = matrix_to_json(r.a.entries());
  j["b"] = element_to_json(r.b);
  if (!r.frame.empty()) {
    Json f = Json::array();
    for (const auto& e : r.frame) f.push_back(element_to_json(e));
    j["frame"] = std::move(f);
  }
  return j;
}

SearchRecord record_from_json(const Json& j) {
  try {
    SearchRecord r{.a = schur_from_json(j.at("A")), .b = element_from_json(j.at("b")), .frame = {}};
    if (j.contains("frame"))
      for (const auto& e : j.at("frame")) r.frame.push_back(element_from_json(e));
    r.margin = number_from_json(j.at("margin"));
    r.threshold = number_from_json(j.at("threshold"));
    r.violated = j.at("verdict").get<std::string>() == "violated";
    r.variant = j.at("variant").get<std::string>() == "cone" ? Variant::Cone : Variant::Absolute;
    r.family = parse_family(j.at("family").get<std::string>());
    r.zero_diagonal = j.value("zero_diagonal", false);
    r.seed = j.at("seed").get<std::uint64_t>();
    r.a_index = j.at("a_index").get<std::size_t>();
    r.b_index = j.at("b_index").get<std::size_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed search record: ") + e.what());
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SweepSummary>& rows) {
  out << "family,n,samples,violations,min_margin\n";
  for (const auto& s : rows) {
    out << to_string(s.family) << ',' << s.n << ',' << s.samples << ',' << s.violations << ',';
    if (std::isfinite(s.min_margin)) {
      out << std::setprecision(17) << s.min_margin;
    } else {
      out << (s.min_margin > 0 ? "inf" : "-inf");
    }
    out << '\n';
  }
}

}  // namespace eja
