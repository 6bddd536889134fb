#include "vilenkin/io.hpp"

#include <cstdio>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace vilenkin::io {

namespace {

const std::regex kFraction(R"(-?[0-9]+(/[0-9]+)?)");
const std::regex kDecimal(R"(-?([0-9]+\.[0-9]+(e[-+][0-9]+)?|[0-9]+e[-+][0-9]+|inf|nan))");

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

void check_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw FormatError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.contains(key)) throw FormatError("unknown key \"" + key + "\" in " + where);
}

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError("missing key \"" + key + "\" in " + where);
  return *it;
}

int as_int(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) throw FormatError(what + " must be an integer");
  return v.get<int>();
}

Rational as_rational(const Json& v, const std::string& what) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception& e) {
      throw FormatError(what + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(Integer(v.dump()));
  if (v.is_number_float()) return parse_rational(v.dump());
  throw FormatError(what + " must be a number string such as \"3/8\"");
}

ComplexRational as_complex(const Json& v, const std::string& what) {
  if (v.is_array()) {
    if (v.size() != 2) throw FormatError(what + " must be [re, im]");
    return {as_rational(v[0], what), as_rational(v[1], what)};
  }
  return {as_rational(v, what), Rational(0)};
}

Rational as_coordinate(const Json& v, int p, const std::string& what) {
  Rational r = as_rational(v, what);
  if (sgn(r) < 0 || !has_p_power_denominator(r, p))
    throw FormatError(what + " must be a nonnegative fraction with a power-of-p denominator");
  return r;
}

std::string checked_number(const Json& v, bool exact, const std::string& what) {
  if (!v.is_string()) throw FormatError(what + " must be a string");
  std::string s = v.get<std::string>();
  if (exact ? !std::regex_match(s, kFraction) : !std::regex_match(s, kDecimal))
    throw FormatError(what + " \"" + s + "\" is not a " + (exact ? "fraction" : "decimal"));
  return s;
}

std::vector<std::pair<std::string, std::string>> checked_intervals(const Json& v, bool exact, const std::string& what) {
  if (!v.is_array()) throw FormatError(what + " must be an array");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& item : v) {
    if (!item.is_array() || item.size() != 2) throw FormatError(what + " entries must be [lo, hi]");
    out.emplace_back(checked_number(item[0], exact, what), checked_number(item[1], exact, what));
  }
  return out;
}

}  // namespace

FunctionSpec parse_function_spec(std::string_view text) {
  Json doc = parse_json(text);
  if (!doc.is_object()) throw FormatError("function spec must be a JSON object");
  FunctionSpec spec;
  spec.p = as_int(require(doc, "p", "function spec"), "\"p\"");
  GroupParams check(spec.p);
  if (doc.contains("atoms")) {
    check_keys(doc, {"p", "atoms"}, "function spec");
    const Json& list = doc["atoms"];
    if (!list.is_array()) throw FormatError("\"atoms\" must be an array");
    std::vector<AtomSpec> atoms;
    for (const auto& a : list) {
      check_keys(a, {"coeff", "scale", "translate", "modulate"}, "atom");
      AtomSpec s;
      s.coeff = a.contains("coeff") ? as_complex(a["coeff"], "\"coeff\"") : ComplexRational{Rational(1), Rational(0)};
      s.scale = as_int(require(a, "scale", "atom"), "\"scale\"");
      s.translate = a.contains("translate") ? as_coordinate(a["translate"], spec.p, "\"translate\"") : Rational(0);
      s.modulate = a.contains("modulate") ? as_coordinate(a["modulate"], spec.p, "\"modulate\"") : Rational(0);
      atoms.push_back(std::move(s));
    }
    spec.atoms = std::move(atoms);
  } else {
    check_keys(doc, {"p", "m", "M", "values"}, "function spec");
    RawStepSpec raw;
    raw.m = as_int(require(doc, "m", "function spec"), "\"m\"");
    raw.M = as_int(require(doc, "M", "function spec"), "\"M\"");
    const Json& values = require(doc, "values", "function spec");
    if (!values.is_array()) throw FormatError("\"values\" must be an array");
    for (const auto& v : values) raw.values.push_back(as_complex(v, "value"));
    spec.raw = std::move(raw);
  }
  return spec;
}

FunctionSpec load_function_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_function_spec(buffer.str());
}

std::vector<ComplexRational> parse_vector(std::string_view text) {
  Json doc = parse_json(text);
  if (!doc.is_array()) throw FormatError("vector must be a JSON array");
  std::vector<ComplexRational> out;
  for (const auto& v : doc) out.push_back(as_complex(v, "vector entry"));
  return out;
}

std::string format(const Rational& r) { return to_fraction_string(r); }

std::string format(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  std::string s(buf);
  if (s.find_first_of(".ein") == std::string::npos) s += ".0";
  return s;
}

UpDocument parse_up_document(std::string_view text) {
  Json doc = parse_json(text);
  check_keys(doc, {"p", "backend", "exact", "reports"}, "report");
  UpDocument out;
  out.p = as_int(require(doc, "p", "report"), "\"p\"");
  const Json& backend = require(doc, "backend", "report");
  if (!backend.is_string()) throw FormatError("\"backend\" must be a string");
  out.backend = backend.get<std::string>();
  const Json& exact = require(doc, "exact", "report");
  if (!exact.is_boolean()) throw FormatError("\"exact\" must be a boolean");
  out.exact = exact.get<bool>();
  if ((out.backend == "exact") != out.exact || (out.backend != "exact" && out.backend != "f64"))
    throw FormatError("\"backend\" and \"exact\" disagree");
  const Json& reports = require(doc, "reports", "report");
  if (!reports.is_array()) throw FormatError("\"reports\" must be an array");
  for (const auto& r : reports) {
    check_keys(r, {"metric", "v_time", "v_freq", "up", "argmin_time", "argmin_freq"}, "report entry");
    UpDocument::Entry e;
    const Json& metric = require(r, "metric", "report entry");
    if (!metric.is_string() || (metric != "lambda" && metric != "gnorm"))
      throw FormatError("\"metric\" must be \"lambda\" or \"gnorm\"");
    e.metric = metric.get<std::string>();
    e.v_time = checked_number(require(r, "v_time", "report entry"), out.exact, "\"v_time\"");
    e.v_freq = checked_number(require(r, "v_freq", "report entry"), out.exact, "\"v_freq\"");
    e.up = checked_number(require(r, "up", "report entry"), out.exact, "\"up\"");
    e.argmin_time = checked_intervals(require(r, "argmin_time", "report entry"), out.exact, "\"argmin_time\"");
    e.argmin_freq = checked_intervals(require(r, "argmin_freq", "report entry"), out.exact, "\"argmin_freq\"");
    out.reports.push_back(std::move(e));
  }
  return out;
}

std::string dump_up_document(const UpDocument& doc) {
  auto intervals = [](const auto& list) {
    Json arr = Json::array();
    for (const auto& [lo, hi] : list) arr.push_back(Json::array({lo, hi}));
    return arr;
  };
  Json j;
  j["p"] = doc.p;
  j["backend"] = doc.backend;
  j["exact"] = doc.exact;
  j["reports"] = Json::array();
  for (const auto& e : doc.reports) {
    Json r;
    r["metric"] = e.metric;
    r["v_time"] = e.v_time;
    r["v_freq"] = e.v_freq;
    r["up"] = e.up;
    r["argmin_time"] = intervals(e.argmin_time);
    r["argmin_freq"] = intervals(e.argmin_freq);
    j["reports"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

}  // namespace vilenkin::io
