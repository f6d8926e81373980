#include "tpsharp/serialize.hpp"

#include <algorithm>
#include <cctype>

#include "tpsharp/error.hpp"

namespace tpsharp {

using nlohmann::json;

json to_json(const Scalar& v) { return v.str(); }

json to_json(const RationalInterval& v) { return {{"lo", to_string(v.lo())}, {"hi", to_string(v.hi())}}; }

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 1; i <= m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 1; j <= m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

json to_json(const SignClass& s) {
  return {{"verdict", to_string(s.verdict)}, {"magnitude", s.witness_magnitude.str()}};
}

json to_json(const SubmatrixSelector& s) { return {{"rows", s.rows()}, {"cols", s.cols()}}; }

json to_json(const RatioReport& r) {
  return {{"critical_ratio", r.critical_ratio.str()},
          {"argmin_cell", {r.argmin_cell.row, r.argmin_cell.col}},
          {"strict", r.strict}};
}

json to_json(const MinorScan& s) {
  return {{"order", s.order},
          {"mode", s.mode == MinorMode::All ? "all" : "contiguous"},
          {"total", s.total},
          {"min_value", s.min_value.str()},
          {"argmin", to_json(s.argmin)},
          {"min_sign", to_json(s.min_sign)},
          {"all_nonnegative", s.all_nonnegative},
          {"all_positive", s.all_positive},
          {"uncertain", s.uncertain},
          {"exact", s.exact}};
}

json to_json(const PositivityResult& r) { return {{"holds", r.holds}, {"scan", to_json(r.scan)}}; }

json to_json(const Certificate& c) {
  json out = {{"claim", {{"kind", to_string(c.claim.kind)}, {"order", c.claim.order}}},
              {"verdict", to_string(c.verdict)},
              {"details", c.details}};
  out["hypothesis"] = c.hypothesis ? to_json(*c.hypothesis) : json(nullptr);
  out["constant"] = c.constant ? to_json(*c.constant) : json(nullptr);
  return out;
}

json to_json(const BoundResult& b) { return {{"bound", b.bound.str()}, {"certificate", to_json(b.certificate)}}; }

json to_json(const ChainEntry& e) {
  return {{"id", e.id}, {"index", e.index}, {"margin", e.margin.str()}, {"strict", e.strict}, {"holds", e.holds}};
}

json to_json(const WitnessResult& w) {
  return {{"matrix", to_json(w.matrix)},
          {"c_target", w.c_target.str()},
          {"ratio", to_json(w.ratio)},
          {"membership", to_string(w.membership)},
          {"det", w.det.str()},
          {"det_sign", to_json(w.det_sign)},
          {"exact", w.exact},
          {"params", w.params}};
}

namespace {

json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

}  // namespace

json to_json(const Lemma4Report& r) {
  return {{"n", r.n},
          {"p", to_string(r.p)},
          {"alpha", r.alpha},
          {"beta", r.beta},
          {"degree_bound", r.degree_bound},
          {"q_values", rationals(r.q_values)},
          {"residuals", rationals(r.residuals)},
          {"coefficients", rationals(r.coefficients)},
          {"leading_coefficient", to_string(r.leading_coefficient)},
          {"expected_leading", to_string(r.expected_leading)},
          {"residual_degree", r.residual_degree},
          {"extra_points_consistent", r.extra_points_consistent},
          {"holds", r.holds}};
}

json to_json(const PfmReport& r) {
  return {{"holds", r.holds},
          {"m", r.m},
          {"N", r.n},
          {"finite_truncation", r.finite_truncation},
          {"scan", to_json(r.scan)}};
}

json to_json(const HutchinsonReport& r) {
  return {{"ratio", r.ratio.str()},
          {"argmin_n", r.argmin},
          {"ner_holds", r.ner_holds},
          {"pf_infinity_implied", r.pf_infinity_implied}};
}

json to_json(const MomentEntry& e) {
  return {{"order", e.order}, {"size", e.order + 1}, {"det", e.det.str()}, {"sign", to_json(e.sign)}};
}

json to_json(const FSequence& f) {
  json vals = json::array();
  for (const auto& v : f.values) vals.push_back(v.str());
  return {{"c", f.c.str()}, {"values", vals}};
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Scalar parse_cell(std::string_view text, const ParseOptions& opts, std::size_t line, std::size_t col) {
  try {
    if (opts.decimals_exact) return Scalar(parse_rational(text));
    return parse_scalar(text);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                                           e.what(),
                Error::Position{line, col});
  }
}

// Mixed exact and approx cells: everything becomes approx.
template <class Container>
void unify(Container& cells, std::vector<std::string>& warnings) {
  const bool any_approx = std::any_of(cells.begin(), cells.end(), [](const Scalar& s) { return !s.is_exact(); });
  const bool any_exact = std::any_of(cells.begin(), cells.end(), [](const Scalar& s) { return s.is_exact(); });
  if (any_approx && any_exact) {
    warnings.emplace_back("mixed exact and decimal entries; all entries read as binary64");
    for (auto& s : cells) s = s.to_approx();
  }
}

Error json_error(std::string_view text, std::size_t byte, const std::string& what) {
  std::size_t line = 1, col = 1;
  for (std::size_t t = 0; t < std::min(byte, text.size()); ++t) {
    if (text[t] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what,
               Error::Position{line, col});
}

Scalar json_cell(const json& v, const ParseOptions& opts, std::size_t row, std::size_t col) {
  if (v.is_string()) return parse_cell(v.get<std::string>(), opts, row, col);
  if (v.is_number_integer()) return parse_cell(v.dump(), opts, row, col);
  if (v.is_number_float()) {
    if (opts.decimals_exact) return parse_cell(v.dump(), opts, row, col);
    return Scalar::approx(v.get<double>());
  }
  throw Error(ErrorCode::ParseError,
              "entry " + std::to_string(row) + "," + std::to_string(col) + " is not a number or numeric string",
              Error::Position{row, col});
}

}  // namespace

Parsed<Matrix> parse_matrix_csv(std::string_view text, const ParseOptions& opts) {
  std::vector<std::vector<Scalar>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string_view content = trim(line);
    if (content.empty() || content.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    std::vector<Scalar> row;
    std::size_t cell_start = 0;
    for (;;) {
      std::size_t comma = line.find(',', cell_start);
      std::string_view cell = line.substr(cell_start, comma == std::string_view::npos ? line.npos : comma - cell_start);
      std::size_t lead = 0;
      while (lead < cell.size() && std::isspace(static_cast<unsigned char>(cell[lead]))) ++lead;
      const std::size_t col = cell_start + lead + 1;
      if (trim(cell).empty()) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ", column " + std::to_string(col) + ": empty cell",
                    Error::Position{line_no, col});
      }
      row.push_back(parse_cell(trim(cell), opts, line_no, col));
      if (comma == std::string_view::npos) break;
      cell_start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": expected " + std::to_string(rows.front().size()) +
                      " cells, found " + std::to_string(row.size()),
                  Error::Position{line_no, 1});
    }
    rows.push_back(std::move(row));
    if (end == text.size()) break;
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, "no matrix rows found", Error::Position{1, 1});
  Parsed<Matrix> out;
  std::vector<Scalar> flat;
  for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  unify(flat, out.warnings);
  out.value = Matrix(rows.size(), rows.front().size(), std::move(flat));
  return out;
}

Parsed<Matrix> parse_matrix_json(std::string_view text, const ParseOptions& opts) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw json_error(text, e.byte > 0 ? e.byte - 1 : 0, e.what());
  }
  // {"rows": n, "cols": n, "entries": [[...], ...]} or a bare list of rows
  const json* rows = &doc;
  if (doc.is_object()) {
    if (!doc.contains("entries")) throw Error(ErrorCode::ParseError, "JSON object needs an \"entries\" member");
    rows = &doc["entries"];
  }
  if (!rows->is_array() || rows->empty()) throw Error(ErrorCode::ParseError, "matrix JSON must be a list of rows");
  std::vector<Scalar> flat;
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows->size(); ++i) {
    const json& row = (*rows)[i];
    if (!row.is_array() || row.empty()) {
      throw Error(ErrorCode::ParseError, "row " + std::to_string(i + 1) + " is not a non-empty list",
                  Error::Position{i + 1, 1});
    }
    if (i == 0) cols = row.size();
    if (row.size() != cols) {
      throw Error(ErrorCode::ParseError, "row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                                             " entries, expected " + std::to_string(cols),
                  Error::Position{i + 1, 1});
    }
    for (std::size_t j = 0; j < row.size(); ++j) flat.push_back(json_cell(row[j], opts, i + 1, j + 1));
  }
  if (doc.is_object()) {
    auto declared = [&](const char* key, std::size_t actual) {
      if (doc.contains(key) && (!doc[key].is_number_unsigned() || doc[key].get<std::size_t>() != actual)) {
        throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" does not match the entries (" +
                                               std::to_string(actual) + ")");
      }
    };
    declared("rows", rows->size());
    declared("cols", cols);
  }
  Parsed<Matrix> out;
  unify(flat, out.warnings);
  out.value = Matrix(rows->size(), cols, std::move(flat));
  return out;
}

namespace {

bool looks_like_json(std::string_view text) {
  std::string_view s = trim(text);
  return !s.empty() && (s.front() == '[' || s.front() == '{');
}

}  // namespace

Parsed<Matrix> parse_matrix(std::string_view text, const ParseOptions& opts) {
  return looks_like_json(text) ? parse_matrix_json(text, opts) : parse_matrix_csv(text, opts);
}

Parsed<std::vector<Scalar>> parse_sequence(std::string_view text, const ParseOptions& opts) {
  Parsed<std::vector<Scalar>> out;
  if (looks_like_json(text)) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw json_error(text, e.byte > 0 ? e.byte - 1 : 0, e.what());
    }
    if (!doc.is_array() || doc.empty()) throw Error(ErrorCode::ParseError, "sequence JSON must be a non-empty list");
    for (std::size_t j = 0; j < doc.size(); ++j) out.value.push_back(json_cell(doc[j], opts, 1, j + 1));
  } else {
    Parsed<Matrix> m = parse_matrix_csv(text, opts);
    // one row, or one term per line
    if (m.value.rows() != 1 && m.value.cols() != 1) {
      throw Error(ErrorCode::ParseError, "sequence CSV must be a single row or a single column", Error::Position{2, 1});
    }
    out.value.assign(m.value.entries().begin(), m.value.entries().end());
    out.warnings = std::move(m.warnings);
    return out;
  }
  unify(out.value, out.warnings);
  return out;
}

std::string matrix_to_csv(const Matrix& m) {
  std::string out;
  for (std::size_t i = 1; i <= m.rows(); ++i) {
    for (std::size_t j = 1; j <= m.cols(); ++j) {
      if (j > 1) out += ',';
      out += m(i, j).str();
    }
    out += '\n';
  }
  return out;
}

}  // namespace tpsharp
