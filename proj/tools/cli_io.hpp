#pragma once

// Problem documents on the wire. Numbers may be JSON numbers or decimal
// strings; strings keep every digit at the working precision.

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chpeakon/chpeakon.hpp"

namespace chpeakon::cli {

using json = nlohmann::ordered_json;

struct ProblemDocument {
  real t0 = 0;
  std::optional<DiscreteMeasurePair<real>> peaks;
  std::optional<SpectralData<real>> spectrum;  // base_time = "spectrum_t0" if given, else t0
};

inline real read_number(const json& v, const std::string& what) {
  if (v.is_number_integer()) return real(v.get<long long>());
  if (v.is_number()) return real(v.get<double>());
  if (v.is_string()) {
    const auto text = v.get<std::string>();
    try {
      return parse_real<real>(text);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, what + ": not a number: \"" + text + "\"");
    }
  }
  throw Error(ErrorCode::ParseError, what + " must be a number or a decimal string");
}

inline const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorCode::ParseError, where + " lacks \"" + key + "\"");
  return *it;
}

inline ProblemDocument parse_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "document must be a JSON object");

  ProblemDocument out;
  if (doc.contains("t0")) out.t0 = read_number(doc["t0"], "t0");

  if (doc.contains("peaks")) {
    const json& arr = doc["peaks"];
    if (!arr.is_array()) throw Error(ErrorCode::ParseError, "\"peaks\" must be an array");
    std::vector<real> x, w, u;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "peaks[" + std::to_string(i) + "]";
      const json& p = arr[i];
      if (!p.is_object()) throw Error(ErrorCode::ParseError, where + " must be an object");
      x.push_back(read_number(require(p, "x", where), where + ".x"));
      w.push_back(read_number(require(p, "omega", where), where + ".omega"));
      u.push_back(p.contains("upsilon") ? read_number(p["upsilon"], where + ".upsilon") : real(0));
    }
    out.peaks = validate_measure(std::move(x), std::move(w), std::move(u));
  }

  if (doc.contains("spectrum")) {
    const json& arr = doc["spectrum"];
    if (!arr.is_array()) throw Error(ErrorCode::ParseError, "\"spectrum\" must be an array");
    std::vector<real> lam, g2;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "spectrum[" + std::to_string(i) + "]";
      const json& e = arr[i];
      if (!e.is_object()) throw Error(ErrorCode::ParseError, where + " must be an object");
      lam.push_back(read_number(require(e, "lambda", where), where + ".lambda"));
      g2.push_back(read_number(require(e, "gamma2", where), where + ".gamma2"));
    }
    const real base = doc.contains("spectrum_t0") ? read_number(doc["spectrum_t0"], "spectrum_t0") : out.t0;
    out.spectrum = make_spectral_data(std::move(lam), std::move(g2), base);
  }

  if (!out.peaks && !out.spectrum)
    throw Error(ErrorCode::InvalidArgument, "document needs \"peaks\" or \"spectrum\"");
  return out;
}

/// JSON numbers are doubles; non-finite values become null.
inline json number(const real& x) {
  const double d = to_double(x);
  return std::isfinite(d) ? json(d) : json(nullptr);
}

inline json number_array(const std::vector<real>& v) {
  json a = json::array();
  for (const real& x : v) a.push_back(number(x));
  return a;
}

inline json peaks_json(const DiscreteMeasurePair<real>& m) {
  json a = json::array();
  for (std::size_t n = 0; n < m.size(); ++n)
    a.push_back({{"x", number(m.positions[n])}, {"omega", number(m.omega[n])}, {"upsilon", number(m.upsilon[n])}});
  return a;
}

/// Comma-separated record; reals are capped at 25 significant digits so golden
/// files do not depend on the working precision.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void header(std::initializer_list<const char*> cols) {
    bool first = true;
    for (const char* c : cols) {
      os_ << (first ? "" : ",") << c;
      first = false;
    }
    os_ << '\n';
  }

  template <class... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cell(fields), first = false), ...);
    os_ << '\n';
  }

 private:
  static std::string cell(const real& x) { return format_real(x); }
  static std::string cell(double x) { return format_real(x); }
  static std::string cell(std::size_t x) { return std::to_string(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(bool x) { return x ? "1" : "0"; }
  static std::string cell(const std::string& x) { return x; }

  std::ostream& os_;
};

}  // namespace chpeakon::cli
