#pragma once

#include "vilenkin/group.hpp"
#include "vilenkin/rational.hpp"
#include "vilenkin/scalar.hpp"
#include "vilenkin/signal.hpp"
#include "vilenkin/uncertainty.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vilenkin::io {

using Json = nlohmann::ordered_json;

/// Malformed input file or document.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ComplexRational {
  Rational re;
  Rational im;
};

struct AtomSpec {
  ComplexRational coeff;
  int scale = 0;
  Rational translate;
  Rational modulate;
};

struct RawStepSpec {
  int m = 0;
  int M = 0;
  std::vector<ComplexRational> values;
};

/// Either {"p", "atoms": [...]} or {"p", "m", "M", "values": [[re, im], ...]}.
struct FunctionSpec {
  int p = 2;
  std::optional<std::vector<AtomSpec>> atoms;
  std::optional<RawStepSpec> raw;
};

FunctionSpec parse_function_spec(std::string_view text);
FunctionSpec load_function_spec(const std::string& path);

/// JSON array of [re, im] pairs or of single reals (strings or numbers).
std::vector<ComplexRational> parse_vector(std::string_view text);

std::string format(const Rational& r);
std::string format(double d);

template <class Scalar>
Scalar make_scalar(const ComplexRational& z) {
  return ScalarTraits<Scalar>::from_complex(z.re, z.im);
}

template <class Scalar>
std::vector<Atom<Scalar>> to_atoms(const FunctionSpec& spec) {
  if (!spec.atoms) throw FormatError("function spec has no atom list");
  std::vector<Atom<Scalar>> out;
  for (const auto& a : *spec.atoms)
    out.push_back(Atom<Scalar>{make_scalar<Scalar>(a.coeff), a.scale, lambda_inv(a.translate, spec.p),
                               lambda_inv(a.modulate, spec.p)});
  return out;
}

template <class Scalar>
StepFunction<Scalar> to_step(const FunctionSpec& spec) {
  if (spec.atoms) return step_from_atoms<Scalar>(spec.p, to_atoms<Scalar>(spec));
  const auto& raw = *spec.raw;
  Grid grid(spec.p, raw.m, raw.M);
  if (raw.values.size() != grid.size())
    throw FormatError("\"values\" needs p^(M+m) = " + std::to_string(grid.size()) + " entries");
  Vector<Scalar> v(static_cast<Eigen::Index>(raw.values.size()));
  for (std::size_t i = 0; i < raw.values.size(); ++i) v[static_cast<Eigen::Index>(i)] = make_scalar<Scalar>(raw.values[i]);
  return StepFunction<Scalar>(grid, std::move(v));
}

template <class Real>
std::string format_real(const Real& r) {
  return format(r);
}

template <class Scalar>
Json scalar_json(const Scalar& z) {
  return Json::array({format(ScalarTraits<Scalar>::real(z)), format(ScalarTraits<Scalar>::imag(z))});
}

template <class Scalar>
Json vector_json(const Vector<Scalar>& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(scalar_json(v[i]));
  return arr;
}

/// Interval endpoints in the report's number style.
template <class Scalar>
Json intervals_json(const std::vector<CellInterval>& cells) {
  Json arr = Json::array();
  for (const auto& c : cells) {
    if constexpr (is_exact_v<Scalar>)
      arr.push_back(Json::array({format(c.lo), format(c.hi)}));
    else
      arr.push_back(Json::array({format(c.lo.get_d()), format(c.hi.get_d())}));
  }
  return arr;
}

template <class Scalar>
Json up_json(const UPReport<Scalar>& r) {
  Json j;
  j["metric"] = to_string(r.metric);
  j["v_time"] = format(r.v_time);
  j["v_freq"] = format(r.v_freq);
  j["up"] = format(r.up);
  j["argmin_time"] = intervals_json<Scalar>(r.argmin_time);
  j["argmin_freq"] = intervals_json<Scalar>(r.argmin_freq);
  return j;
}

/// {"p", "backend", "exact", "reports": [...]}.
struct UpDocument {
  struct Entry {
    std::string metric;
    std::string v_time, v_freq, up;
    std::vector<std::pair<std::string, std::string>> argmin_time, argmin_freq;
  };
  int p = 2;
  std::string backend;
  bool exact = true;
  std::vector<Entry> reports;
};

/// Strict schema check; numbers must be fractions for exact documents, decimals otherwise.
UpDocument parse_up_document(std::string_view text);
std::string dump_up_document(const UpDocument& doc);

template <class Scalar>
UpDocument make_up_document(int p, const std::vector<UPReport<Scalar>>& reports) {
  Json j;
  j["p"] = p;
  j["backend"] = ScalarTraits<Scalar>::name;
  j["exact"] = is_exact_v<Scalar>;
  j["reports"] = Json::array();
  for (const auto& r : reports) j["reports"].push_back(up_json(r));
  return parse_up_document(j.dump());
}

}  // namespace vilenkin::io
