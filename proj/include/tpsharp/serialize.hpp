#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tpsharp/chebyshev.hpp"
#include "tpsharp/constructions.hpp"
#include "tpsharp/positivity.hpp"
#include "tpsharp/sequences.hpp"

namespace tpsharp {

// Exact scalars serialize as "p/q" strings, approx ones as shortest
// round-trip decimals; intervals as {"lo": .., "hi": ..}.
nlohmann::json to_json(const Scalar& v);
nlohmann::json to_json(const RationalInterval& v);
nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const SignClass& s);
nlohmann::json to_json(const SubmatrixSelector& s);
nlohmann::json to_json(const RatioReport& r);
nlohmann::json to_json(const MinorScan& s);
nlohmann::json to_json(const PositivityResult& r);
nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const BoundResult& b);
nlohmann::json to_json(const ChainEntry& e);
nlohmann::json to_json(const WitnessResult& w);
nlohmann::json to_json(const Lemma4Report& r);
nlohmann::json to_json(const PfmReport& r);
nlohmann::json to_json(const HutchinsonReport& r);
nlohmann::json to_json(const MomentEntry& e);
nlohmann::json to_json(const FSequence& f);

struct ParseOptions {
  // Read decimal literals as their exact rational value instead of binary64.
  bool decimals_exact = false;
};

template <class T>
struct Parsed {
  T value;
  std::vector<std::string> warnings;
};

/*
 * Matrix text: CSV with one row per line (blank and '#' lines skipped) or
 * JSON ({"rows", "cols", "entries"} or a bare list of rows) whose cells are numbers or
 * "p/q" / decimal strings. A file mixing exact and decimal cells is read
 * entirely as approx, with a warning. Errors: ParseError carrying the
 * (line, column) of the offending text.
 */
Parsed<Matrix> parse_matrix(std::string_view text, const ParseOptions& opts = {});
Parsed<Matrix> parse_matrix_csv(std::string_view text, const ParseOptions& opts = {});
Parsed<Matrix> parse_matrix_json(std::string_view text, const ParseOptions& opts = {});

// One-line CSV or a JSON list.
Parsed<std::vector<Scalar>> parse_sequence(std::string_view text, const ParseOptions& opts = {});

std::string matrix_to_csv(const Matrix& m);

}  // namespace tpsharp
