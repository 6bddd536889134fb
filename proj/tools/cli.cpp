#include "cli.hpp"

#include "vilenkin/haar.hpp"
#include "vilenkin/io.hpp"
#include "vilenkin/reference.hpp"
#include "vilenkin/uncertainty.hpp"
#include "vilenkin/vct.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <iostream>
#include <sstream>
#include <string>

namespace vilenkin::cli {

namespace {

struct Options {
  int p = 2;
  std::string backend = "exact";
  std::string metric = "both";
  bool json = false;
  std::string input;

  // vct
  bool inverse = false;
  bool naive = false;
  // haar
  bool fourier_side = false;
  // deriv
  std::string kind = "modified";
  // verify-paper
  bool corrupt = false;
  // bench
  int n_max = 16;
  int repeats = 3;
};

std::string read_file(const std::string& path) {
  if (path.empty()) throw io::FormatError("--input is required");
  if (path == "-") {
    std::stringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) throw io::FormatError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<Metric> metrics(const Options& o) {
  if (o.metric == "lambda") return {Metric::lambda};
  if (o.metric == "gnorm") return {Metric::gnorm};
  return {Metric::lambda, Metric::gnorm};
}

template <class Scalar>
io::Json step_json(const StepFunction<Scalar>& f) {
  io::Json j;
  j["p"] = f.p();
  j["m"] = f.grid().m;
  j["M"] = f.grid().M;
  j["half_exponent"] = f.half_exponent();
  j["values"] = io::vector_json(f.values());
  return j;
}

// ---- up --------------------------------------------------------------------

template <class Scalar>
int cmd_up(const Options& o, std::ostream& out) {
  auto spec = io::parse_function_spec(read_file(o.input));
  std::vector<UPReport<Scalar>> reports;
  for (Metric m : metrics(o)) {
    if (spec.atoms && !ScalarTraits<Scalar>::supports_order(spec.p))
      reports.push_back(up_atoms(spec.p, io::to_atoms<Scalar>(spec), m));
    else
      reports.push_back(up(io::to_step<Scalar>(spec), m));
  }
  if (o.json) {
    out << io::dump_up_document(io::make_up_document(spec.p, reports));
    return kOk;
  }
  for (const auto& r : reports) {
    const char* tag = r.metric == Metric::lambda ? "lambda" : "G";
    out << "V_" << tag << "(f)  = " << io::format(r.v_time) << "\n";
    out << "V_" << tag << "(Ff) = " << io::format(r.v_freq) << "\n";
    out << "UP_" << tag << "(f) = " << io::format(r.up) << "\n";
    auto show = [&](const char* label, const std::vector<CellInterval>& cells) {
      out << label;
      for (const auto& c : cells) {
        if constexpr (is_exact_v<Scalar>)
          out << " [" << io::format(c.lo) << ", " << io::format(c.hi) << ")";
        else
          out << " [" << io::format(c.lo.get_d()) << ", " << io::format(c.hi.get_d()) << ")";
      }
      out << "\n";
    };
    show("argmin x:", r.argmin_time);
    show("argmin t:", r.argmin_freq);
  }
  return kOk;
}

// ---- vct -------------------------------------------------------------------

template <class Scalar>
int cmd_vct(const Options& o, std::ostream& out) {
  auto entries = io::parse_vector(read_file(o.input));
  int n = 0;
  Index len = 1;
  while (len < entries.size()) {
    len *= static_cast<Index>(o.p);
    ++n;
  }
  if (len != entries.size()) throw io::FormatError("vector length is not a power of p");
  Vector<Scalar> x(static_cast<Eigen::Index>(len));
  for (Index i = 0; i < len; ++i) x[static_cast<Eigen::Index>(i)] = io::make_scalar<Scalar>(entries[i]);
  Vector<Scalar> y;
  if (o.inverse) {
    SpectrumVector<Scalar> s{o.p, n, x};
    y = o.naive ? vct_inverse_naive(s) : vct_inverse(s);
  } else {
    y = (o.naive ? vct_forward_naive(x, o.p, n) : vct_forward(x, o.p, n)).entries;
  }
  out << io::vector_json(y).dump() << "\n";
  return kOk;
}

// ---- haar ------------------------------------------------------------------

template <class Scalar>
int cmd_haar(const Options& o, std::ostream& out) {
  auto spec = io::parse_function_spec(read_file(o.input));
  auto f = io::to_step<Scalar>(spec);
  auto c = haar_analyze(f);
  auto e = o.fourier_side ? d_from_c(c) : c;
  out << "# coefficient = p^((j+" << e.half_exponent << ")/2) * (re + i im)\n";
  out << "nu,j,k,re,im\n";
  for (const auto& [idx, v] : e.details) {
    if (ScalarTraits<Scalar>::is_zero(v)) continue;
    out << idx.nu << "," << idx.j << "," << idx.k << "," << io::format(ScalarTraits<Scalar>::real(v)) << ","
        << io::format(ScalarTraits<Scalar>::imag(v)) << "\n";
  }
  out << "TAIL " << e.tail_jmin << " " << io::format(ScalarTraits<Scalar>::real(e.tail_mean));
  if (!ScalarTraits<Scalar>::is_zero(Scalar(ScalarTraits<Scalar>::imag(e.tail_mean))))
    out << " " << io::format(ScalarTraits<Scalar>::imag(e.tail_mean));
  out << "\n";
  return kOk;
}

// ---- deriv -----------------------------------------------------------------

template <class Scalar>
int cmd_deriv(const Options& o, std::ostream& out) {
  auto spec = io::parse_function_spec(read_file(o.input));
  auto f = io::to_step<Scalar>(spec);
  io::Json j;
  if (o.kind == "classical") {
    j = step_json(gibbs_classical(f));
  } else {
    auto g = modified_gibbs(f);
    j = step_json(g.regular);
    j["zero_cell_value"] = io::scalar_json(g.zero_cell_value);
    j["zero_cell_moment"] = io::format(g.zero_cell_moment);
    j["norm2"] = io::format(g.norm2());
  }
  out << j.dump(2) << "\n";
  return kOk;
}

// ---- fourier ---------------------------------------------------------------

template <class Scalar>
int cmd_fourier(const Options& o, std::ostream& out) {
  auto spec = io::parse_function_spec(read_file(o.input));
  out << step_json(fourier_step(io::to_step<Scalar>(spec))).dump(2) << "\n";
  return kOk;
}

// ---- verify-paper ----------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out) {
  auto checks = reference::run_checks(o.corrupt);
  int failed = 0;
  for (const auto& c : checks) {
    out << c.name << " = " << c.actual << (c.pass ? " PASS" : " FAIL");
    if (!c.pass) {
      out << " (expected " << c.expected << ")";
      ++failed;
    }
    out << "\n";
  }
  out << checks.size() - failed << "/" << checks.size() << " passed\n";
  return failed ? kVerificationFailed : kOk;
}

// ---- bench -----------------------------------------------------------------

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
  GroupParams params(o.p);
  out << "p,n,kernel,nanos\n";
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int n = 1; n <= o.n_max; ++n) {
    Index len = detail::checked_length(o.p, n);
    Vector<Float> x(static_cast<Eigen::Index>(len));
    for (auto& v : x) v = Float(unif(rng), unif(rng));
    VctPlan<Float> plan(o.p, n);

    auto fast = vct_forward(x, plan).entries;
    auto slow = vct_forward_naive(x, o.p, n).entries;
    double scale = std::max(1.0, slow.cwiseAbs().maxCoeff());
    double diff = (fast - slow).cwiseAbs().maxCoeff();
    if (diff > 1e-12 * scale) {
      err << "fast and naive kernels disagree at p=" << o.p << " n=" << n << " (max diff " << diff << ")\n";
      return kVerificationFailed;
    }

    auto time = [&](auto&& kernel) {
      long long best = -1;
      for (int r = 0; r < o.repeats; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        auto y = kernel();
        auto t1 = std::chrono::steady_clock::now();
        if (y.size() != x.size()) std::abort();
        long long ns = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
        if (best < 0 || ns < best) best = ns;
      }
      return best;
    };
    out << o.p << "," << n << ",naive," << time([&] { return vct_forward_naive(x, o.p, n).entries; }) << "\n";
    out << o.p << "," << n << ",fast," << time([&] { return vct_forward(x, plan).entries; }) << "\n";
  }
  return kOk;
}

template <class Fn>
int dispatch(const Options& o, Fn&& fn) {
  if (o.backend == "f64") return fn(Float{});
  return fn(Exact{});
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Harmonic analysis on Vilenkin groups: transforms, Haar/Gibbs operators, uncertainty products"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--p", o.p, "group parameter p >= 2")->check(CLI::Range(2, 1 << 20));
  app.add_option("--backend", o.backend, "scalar backend")->check(CLI::IsMember({"exact", "f64"}));
  app.add_option("--metric", o.metric, "distance for variances")->check(CLI::IsMember({"lambda", "gnorm", "both"}));
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_option("--input", o.input, "function-spec or vector file ('-' for stdin)");

  auto* up_cmd = app.add_subcommand("up", "variances and uncertainty products of a function");
  auto* vct_cmd = app.add_subcommand("vct", "discrete Vilenkin-Chrestenson transform of a vector");
  vct_cmd->add_flag("--inverse", o.inverse, "inverse transform");
  vct_cmd->add_flag("--naive", o.naive, "O(N^2) kernel");
  auto* haar_cmd = app.add_subcommand("haar", "Haar coefficients of a function");
  haar_cmd->add_flag("--fourier", o.fourier_side, "coefficients of the Fourier transform instead");
  auto* deriv_cmd = app.add_subcommand("deriv", "Gibbs derivatives");
  deriv_cmd->add_option("--kind", o.kind, "modified (multiplier ||.||_G) or classical (p = 2)")
      ->check(CLI::IsMember({"modified", "classical"}));
  auto* fourier_cmd = app.add_subcommand("fourier", "Fourier transform of a function");
  auto* verify_cmd = app.add_subcommand("verify-paper", "recompute the tabulated reference values");
  verify_cmd->add_flag("--corrupt", o.corrupt, "alter one expected value (harness self-test)")->group("");
  auto* bench_cmd = app.add_subcommand("bench", "time naive vs fast VCT kernels (CSV)");
  bench_cmd->add_option("--n-max", o.n_max, "largest exponent n")->check(CLI::Range(0, 64));
  bench_cmd->add_option("--repeats", o.repeats, "timing repetitions (best is kept)")->check(CLI::Range(1, 1000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*up_cmd) return dispatch(o, [&](auto s) { return cmd_up<decltype(s)>(o, out); });
    if (*vct_cmd) return dispatch(o, [&](auto s) { return cmd_vct<decltype(s)>(o, out); });
    if (*haar_cmd) return dispatch(o, [&](auto s) { return cmd_haar<decltype(s)>(o, out); });
    if (*deriv_cmd) return dispatch(o, [&](auto s) { return cmd_deriv<decltype(s)>(o, out); });
    if (*fourier_cmd) return dispatch(o, [&](auto s) { return cmd_fourier<decltype(s)>(o, out); });
    if (*verify_cmd) return cmd_verify(o, out);
    if (*bench_cmd) {
      if (o.n_max > 0 && std::pow(static_cast<double>(o.p), o.n_max) > static_cast<double>(kMaxCells)) {
        err << "error: p^n_max exceeds 2^26 entries\n";
        return kUsage;
      }
      return cmd_bench(o, out, err);
    }
  } catch (const BackendBoundaryError& e) {
    err << "backend boundary: " << e.what() << "\n";
    return kBackendBoundary;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace vilenkin::cli
