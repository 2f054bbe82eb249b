#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <numeric>
#include <ostream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "su2lqu/su2lqu.h"

namespace su2lqu::cli {

namespace {

struct StateDeleter {
  void operator()(su2lqu_state* s) const noexcept { su2lqu_state_free(s); }
};
using StateHandle = std::unique_ptr<su2lqu_state, StateDeleter>;

// A failed library call, mapped onto the CLI exit codes.
struct CallFailure {
  int exit_code;
  std::string message;
};

int exit_code_for(su2lqu_status status) {
  switch (status) {
    case SU2LQU_ERR_DOMAIN:
    case SU2LQU_ERR_ARGUMENT:
      return kExitDomain;
    default:
      return kExitNumeric;
  }
}

void check(su2lqu_status status) {
  if (status != SU2LQU_OK) throw CallFailure{exit_code_for(status), su2lqu_last_error()};
}

StateHandle make_state(int j_twice, double p, std::optional<double> q) {
  su2lqu_state* raw = nullptr;
  if (q) {
    check(su2lqu_state_spin_one(j_twice, p, *q, &raw));
  } else {
    check(su2lqu_state_spin_half(j_twice, p, &raw));
  }
  return StateHandle(raw);
}

bool wants_numeric(MethodChoice m) {
  return m == MethodChoice::numeric || m == MethodChoice::all;
}

std::string parse_error(std::string_view what, std::string_view text) {
  return std::string(what) + " '" + std::string(text) + "'";
}

long long parse_integer(std::string_view text, std::string_view what) {
  long long value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw UsageError(parse_error(what, text));
  return value;
}

double parse_real(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value))
    throw UsageError(parse_error(what, text));
  return value;
}

int require_spin_half(const CommandOptions& o) {
  if (o.j_twice < 1) throw UsageError("--j must be >= 1/2 for a spin-1/2 partner");
  return o.j_twice;
}

int require_spin_one(const CommandOptions& o) {
  if (o.j_twice < 2) throw UsageError("--j must be >= 1 for a spin-1 partner");
  return o.j_twice;
}

void require_steps(const CommandOptions& o) {
  if (o.steps < 2) throw UsageError("--steps must be >= 2");
}

void require_seeds(const CommandOptions& o) {
  if (o.seeds < 1) throw UsageError("--seeds must be >= 1");
}

struct SweepRow {
  int j_twice;
  double p;
  std::optional<double> q;
  double lqu_closed;
  std::optional<double> lqu_numeric;
};

std::string format_row(const SweepRow& row) {
  std::string line = std::to_string(row.j_twice);
  line += ',' + format_number(row.p);
  line += ',' + (row.q ? format_number(*row.q) : std::string());
  line += ',' + format_number(row.lqu_closed);
  if (row.lqu_numeric) {
    line += ',' + format_number(*row.lqu_numeric);
    line += ',' + format_number(std::abs(row.lqu_closed - *row.lqu_numeric));
  } else {
    line += ",,";
  }
  return line;
}

struct GridPoint {
  double p;
  std::optional<double> q;
};

struct PointOutcome {
  std::optional<SweepRow> row;
  std::optional<CallFailure> failure;
};

PointOutcome evaluate_point(int j_twice, const GridPoint& pt, const CommandOptions& o) {
  PointOutcome outcome;
  try {
    const auto state = make_state(j_twice, pt.p, pt.q);
    SweepRow row{j_twice, pt.p, pt.q, 0.0, std::nullopt};
    check(su2lqu_lqu_closed(state.get(), &row.lqu_closed));
    if (wants_numeric(o.method)) {
      double value = 0.0;
      check(su2lqu_lqu_numeric(state.get(), o.seeds, &value, nullptr, 0, nullptr));
      row.lqu_numeric = value;
    }
    outcome.row = row;
  } catch (const CallFailure& f) {
    outcome.failure = f;
  }
  return outcome;
}

// Evaluates every grid point (in parallel when more than one hardware thread
// is available) and writes rows in grid order.
int run_sweep(int j_twice, const std::vector<GridPoint>& grid, const CommandOptions& o,
              std::ostream& out, std::ostream& err) {
  std::vector<PointOutcome> outcomes(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++)
      outcomes[i] = evaluate_point(j_twice, grid[i], o);
  };
  const unsigned threads =
      std::clamp<unsigned>(std::thread::hardware_concurrency(), 1u,
                           static_cast<unsigned>(std::max<std::size_t>(grid.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  out << kSweepHeader << '\n';
  for (const auto& outcome : outcomes) {
    if (outcome.failure) {
      err << "error: " << outcome.failure->message << '\n';
      return outcome.failure->exit_code;
    }
    out << format_row(*outcome.row) << '\n';
  }
  return kExitOk;
}

void reject_wmatrix_for_sweeps(const CommandOptions& o) {
  if (o.method == MethodChoice::wmatrix) {
    throw UsageError("--method wmatrix is not available for sweeps (use closed, numeric or all)");
  }
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const CallFailure& f) {
    err << "error: " << f.message << '\n';
    return f.exit_code;
  }
}

}  // namespace

int parse_spin_twice(std::string_view text) {
  const auto slash = text.find('/');
  long long num = 0;
  long long den = 1;
  if (slash == std::string_view::npos) {
    num = parse_integer(text, "invalid spin");
  } else {
    num = parse_integer(text.substr(0, slash), "invalid spin");
    den = parse_integer(text.substr(slash + 1), "invalid spin");
  }
  if (den <= 0 || num < 0) throw UsageError(parse_error("spin must be a non-negative p/q with q > 0, got", text));
  if ((2 * num) % den != 0) throw UsageError(parse_error("spin must be an integer or half-integer, got", text));
  const long long twice = 2 * num / den;
  if (twice > 100000) throw UsageError(parse_error("spin too large", text));
  return static_cast<int>(twice);
}

double parse_probability(std::string_view text, std::string_view name) {
  const std::string what = "invalid " + std::string(name);
  double value = 0.0;
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    value = parse_real(text, what);
  } else {
    const double num = parse_real(text.substr(0, slash), what);
    const double den = parse_real(text.substr(slash + 1), what);
    if (den == 0.0) throw UsageError(parse_error(what, text));
    value = num / den;
  }
  if (value < 0.0 || value > 1.0) {
    throw UsageError(std::string(name) + " must lie in [0, 1], got " + std::string(text));
  }
  return value;
}

MethodChoice parse_method(std::string_view text) {
  if (text == "closed") return MethodChoice::closed;
  if (text == "wmatrix") return MethodChoice::wmatrix;
  if (text == "numeric") return MethodChoice::numeric;
  if (text == "all") return MethodChoice::all;
  throw UsageError(parse_error("--method must be closed, wmatrix, numeric or all, got", text));
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

int cmd_compute(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!o.p) throw UsageError("--p is required");
    const bool spin_one = o.q.has_value();
    const int j_twice = spin_one ? require_spin_one(o) : require_spin_half(o);
    if (spin_one && o.method == MethodChoice::wmatrix) {
      throw UsageError("--method wmatrix needs a spin-1/2 partner (omit --q)");
    }
    if (wants_numeric(o.method)) require_seeds(o);
    const auto state = make_state(j_twice, *o.p, o.q);

    std::vector<std::string> lines;
    auto emit = [&](const char* method, double value, const std::string& direction = {}) {
      lines.push_back(std::string(method) + ',' + format_number(value) + ',' + direction);
    };
    if (o.method == MethodChoice::closed || o.method == MethodChoice::all) {
      double v = 0.0;
      check(su2lqu_lqu_closed(state.get(), &v));
      emit("closed", v);
    }
    if (!spin_one && (o.method == MethodChoice::wmatrix || o.method == MethodChoice::all)) {
      double v = 0.0;
      check(su2lqu_lqu_wmatrix(state.get(), &v));
      emit("wmatrix", v);
    }
    if (wants_numeric(o.method)) {
      double v = 0.0;
      double n[8] = {};
      std::size_t len = 0;
      check(su2lqu_lqu_numeric(state.get(), o.seeds, &v, n, 8, &len));
      std::string direction;
      for (std::size_t i = 0; i < len; ++i) {
        if (i) direction += ' ';
        direction += format_number(n[i]);
      }
      emit("numeric", v, direction);
    }
    if (spin_one && o.method == MethodChoice::all) {
      double b1 = 0.0, b2 = 0.0;
      check(su2lqu_stationary_values(state.get(), &b1, &b2));
      emit("branch1", b1, "0 0 0.5 0 0 0 0 " + format_number(std::sqrt(3.0) / 2.0));
      emit("branch2", b2, "0 0 " + format_number(-std::sqrt(3.0) / 2.0) + " 0 0 0 0 0.5");
    }
    out << "method,value,direction\n";
    for (const auto& line : lines) out << line << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_sweep_p(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const int j_twice = require_spin_half(o);
    require_steps(o);
    reject_wmatrix_for_sweeps(o);
    if (wants_numeric(o.method)) require_seeds(o);
    std::vector<GridPoint> grid;
    const int last = o.steps - 1;
    for (int k = 0; k <= last; ++k) grid.push_back({static_cast<double>(k) / last, std::nullopt});
    return run_sweep(j_twice, grid, o, out, err);
  });
}

int cmd_sweep_pq(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const int j_twice = require_spin_one(o);
    require_steps(o);
    reject_wmatrix_for_sweeps(o);
    if (wants_numeric(o.method)) require_seeds(o);
    std::vector<GridPoint> grid;
    const int last = o.steps - 1;
    // Integer test keeps points with P + Q = 1 exactly on the simplex.
    for (int a = 0; a <= last; ++a)
      for (int b = 0; a + b <= last; ++b)
        grid.push_back({static_cast<double>(a) / last, static_cast<double>(b) / last});
    return run_sweep(j_twice, grid, o, out, err);
  });
}

int cmd_validate(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!o.p) throw UsageError("--p is required");
    const int j_twice = o.q ? require_spin_one(o) : require_spin_half(o);
    const auto state = make_state(j_twice, *o.p, o.q);
    su2lqu_validation v{};
    check(su2lqu_validate(state.get(), &v));

    const std::pair<const char*, double> checks[] = {
        {"hermiticity", v.hermiticity},
        {"trace_error", v.trace_error},
        {"negativity", v.negativity},
        {"su2_invariance", v.invariance},
        {"sector_roundtrip", v.sector_roundtrip},
        {"sqrt_square", v.sqrt_square},
        {"sqrt_agreement", v.sqrt_agreement},
        {"coefficient_route", v.coefficients},
    };
    bool ok = true;
    out << "check,residual,threshold,status\n";
    for (const auto& [name, residual] : checks) {
      const bool pass = residual <= kValidateThreshold;
      ok = ok && pass;
      out << name << ',' << format_number(residual) << ',' << format_number(kValidateThreshold)
          << ',' << (pass ? "pass" : "fail") << '\n';
    }
    if (!ok) {
      err << "error: residual above " << format_number(kValidateThreshold) << '\n';
      return static_cast<int>(kExitNumeric);
    }
    return static_cast<int>(kExitOk);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local quantum uncertainty of SU(2)-invariant spin-j (x) spin-1/2 and spin-1 states"};
  app.require_subcommand(1);

  std::string j_text, p_text, q_text, method_text = "closed", out_path;
  CommandOptions options;

  auto add_j = [&](CLI::App* sub) {
    sub->add_option("--j", j_text, "spin j of subsystem A, e.g. 5/2 or 3")->required();
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "write CSV to this path instead of stdout");
  };
  auto add_method = [&](CLI::App* sub) {
    sub->add_option("--method", method_text, "closed | wmatrix | numeric | all")
        ->capture_default_str();
  };
  auto add_seeds = [&](CLI::App* sub) {
    sub->add_option("--seeds", options.seeds, "quasi-random starts for the numeric route")
        ->capture_default_str();
  };
  auto add_steps = [&](CLI::App* sub) {
    sub->add_option("--steps", options.steps, "grid points per axis (>= 2)")
        ->capture_default_str();
  };

  auto* compute = app.add_subcommand("compute", "LQU of a single state");
  add_j(compute);
  compute->add_option("--p", p_text, "weight of the lowest sector")->required();
  compute->add_option("--q", q_text, "weight of the J = j sector (spin-1 partner)");
  add_method(compute);
  add_seeds(compute);
  add_out(compute);

  auto* sweep_p = app.add_subcommand("sweep-p", "LQU vs P for a spin-1/2 partner");
  add_j(sweep_p);
  add_steps(sweep_p);
  add_method(sweep_p);
  add_seeds(sweep_p);
  add_out(sweep_p);

  auto* sweep_pq = app.add_subcommand("sweep-pq", "LQU over the (P, Q) simplex for a spin-1 partner");
  add_j(sweep_pq);
  add_steps(sweep_pq);
  add_method(sweep_pq);
  add_seeds(sweep_pq);
  add_out(sweep_pq);

  auto* validate = app.add_subcommand("validate", "structural residuals of a state");
  add_j(validate);
  validate->add_option("--p", p_text, "weight of the lowest sector")->required();
  validate->add_option("--q", q_text, "weight of the J = j sector (spin-1 partner)");
  add_out(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }

  try {
    options.j_twice = parse_spin_twice(j_text);
    if (!p_text.empty()) options.p = parse_probability(p_text, "--p");
    if (!q_text.empty()) options.q = parse_probability(q_text, "--q");
    options.method = parse_method(method_text);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot open '" << out_path << "' for writing\n";
      return kExitDomain;
    }
    sink = &file;
  }

  if (*compute) return cmd_compute(options, *sink, err);
  if (*sweep_p) return cmd_sweep_p(options, *sink, err);
  if (*sweep_pq) return cmd_sweep_pq(options, *sink, err);
  return cmd_validate(options, *sink, err);
}

}  // namespace su2lqu::cli
