#include "halfline/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "halfline/asym.hpp"
#include "halfline/error.hpp"
#include "halfline/inverse.hpp"

namespace halfline::cli {

using nlohmann::json;

const char* to_string(Command c) noexcept {
  switch (c) {
    case Command::asym: return "asym";
    case Command::shoot: return "shoot";
    case Command::compare: return "compare";
    case Command::count: return "count";
    case Command::invert: return "invert";
    case Command::check_k: return "check-k";
    case Command::check_l: return "check-l";
  }
  return "?";
}

namespace {

double parse_double(const std::string& text, const std::string& whole) {
  if (text.empty()) throw Error(ErrorKind::input, "cannot parse number '" + whole + "'");
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !std::isfinite(value))
    throw Error(ErrorKind::input, "cannot parse number '" + whole + "'");
  return value;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace

cplx parse_complex(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw Error(ErrorKind::input, "empty complex number");
  const char last = text.back();
  if (last != 'i' && last != 'j') return {parse_double(text, raw), 0.0};

  const std::string body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string re_part = split == std::string::npos ? "" : body.substr(0, split);
  std::string im_part = split == std::string::npos ? body : body.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  const double re = re_part.empty() ? 0.0 : parse_double(re_part, raw);
  return {re, parse_double(im_part, raw)};
}

std::vector<cplx> parse_complex_list(const std::string& text) {
  std::vector<cplx> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
  if (out.empty()) throw Error(ErrorKind::input, "empty list '" + text + "'");
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    const double v = parse_double(trim(s), text);
    if (v != std::floor(v) || std::abs(v) > 1e9)
      throw Error(ErrorKind::input, "index range must hold integers: '" + text + "'");
    return static_cast<int>(v);
  };
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const int n = to_int(text);
    return {n, n};
  }
  const int lo = to_int(text.substr(0, colon));
  const int hi = to_int(text.substr(colon + 1));
  if (hi < lo) throw Error(ErrorKind::input, "index range is empty: '" + text + "'");
  return {lo, hi};
}

std::optional<JobSpec> parse_args(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Eigenvalue asymptotics of -u'' + (x^m + P(x)) u = E u on [0, inf)"};
  app.require_subcommand(1);

  std::string a_text, alpha_text = "1", beta_text = "0", n_text, t_text, lambda_text, format = "csv";
  JobSpec job;
  double ode_tol = job.shooting.ode_rel_tol;

  struct Sub {
    Command command;
    const char* description;
  };
  const std::vector<Sub> subs = {
      {Command::asym, "asymptotic eigenvalues E_n"},
      {Command::shoot, "eigenvalues from the shooting solver"},
      {Command::compare, "shooting vs asymptotic eigenvalues"},
      {Command::count, "eigenvalue counting function"},
      {Command::invert, "recover a_1..a_J from eigenvalues"},
      {Command::check_k, "closed form vs quadrature for K_{m,j,k}"},
      {Command::check_l, "L(a, lambda) quadrature vs expansion"},
  };
  std::vector<std::pair<CLI::App*, Command>> registered;
  for (const auto& sub : subs) {
    CLI::App* s = app.add_subcommand(to_string(sub.command), sub.description);
    s->add_option("--m", job.m, "degree of the leading monomial (>= 3)");
    s->add_option("--a", a_text, "coefficients a_1,...,a_{m-1} (re or re+imi)");
    s->add_option("--alpha", alpha_text, "boundary coefficient alpha");
    s->add_option("--beta", beta_text, "boundary coefficient beta");
    s->add_option("--n", n_text, "index window lo:hi");
    s->add_option("--t", t_text, "comma-separated t values (count)");
    s->add_option("--J", job.J, "number of coefficients to recover (invert)");
    s->add_option("--lambda", lambda_text, "comma-separated lambda values (check-l)");
    s->add_option("--input", job.input, "eigenvalue JSON file (invert)");
    s->add_option("--output", job.output, "output path (default stdout)");
    s->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--ode-tol", ode_tol, "relative and absolute ODE tolerance");
    s->add_option("--radius-factor", job.shooting.radius_factor, "anchor radius multiplier");
    s->add_option("--newton-tol", job.shooting.newton_tol, "Newton step tolerance");
    registered.emplace_back(s, sub.command);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorKind::input, e.what());
  }

  for (const auto& [sub, command] : registered)
    if (sub->parsed()) job.command = command;
  job.format = format == "json" ? Format::json : Format::csv;
  if (!a_text.empty()) job.a = parse_complex_list(a_text);
  job.alpha = parse_complex(alpha_text);
  job.beta = parse_complex(beta_text);
  if (!n_text.empty()) {
    auto [lo, hi] = parse_range(n_text);
    job.n_lo = lo;
    job.n_hi = hi;
  }
  if (!t_text.empty()) {
    for (cplx v : parse_complex_list(t_text)) {
      if (v.imag() != 0.0) throw Error(ErrorKind::input, "--t values must be real");
      job.t.push_back(v.real());
    }
  }
  if (!lambda_text.empty()) job.lambdas = parse_complex_list(lambda_text);
  job.shooting.ode_rel_tol = ode_tol;
  job.shooting.ode_abs_tol = ode_tol;
  return job;
}

namespace {

// One output table: fixed column names and rows of numbers (NaN -> null).
using Cell = std::variant<long long, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json spec_json(const JobSpec& job) {
  json spec;
  spec["command"] = to_string(job.command);
  spec["m"] = job.m;
  spec["a"] = json::array();
  for (cplx c : job.a) spec["a"].push_back(complex_json(c));
  spec["alpha"] = complex_json(job.alpha);
  spec["beta"] = complex_json(job.beta);
  if (job.n_lo) spec["n_lo"] = *job.n_lo;
  if (job.n_hi) spec["n_hi"] = *job.n_hi;
  if (!job.t.empty()) spec["t"] = job.t;
  spec["J"] = job.J;
  if (!job.lambdas.empty()) {
    spec["lambda"] = json::array();
    for (cplx l : job.lambdas) spec["lambda"].push_back(complex_json(l));
  }
  if (!job.input.empty()) spec["input"] = job.input;
  spec["format"] = job.format == Format::json ? "json" : "csv";
  return spec;
}

void write_table(const JobSpec& job, const Table& table, std::ostream& out) {
  if (job.format == Format::json) {
    json doc;
    doc["version"] = kVersion;
    doc["spec"] = spec_json(job);
    doc["rows"] = json::array();
    for (const auto& row : table.rows) {
      json obj = json::object();
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (const auto* i = std::get_if<long long>(&row[c])) {
          obj[table.columns[c]] = *i;
        } else {
          const double v = std::get<double>(row[c]);
          obj[table.columns[c]] = std::isfinite(v) ? json(v) : json(nullptr);
        }
      }
      doc["rows"].push_back(std::move(obj));
    }
    out << doc.dump(2) << "\n";
    return;
  }
  out << "# halfline " << kVersion << " " << to_string(job.command) << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "");
      if (const auto* i = std::get_if<long long>(&row[c])) out << *i;
      else out << format_double(std::get<double>(row[c]));
    }
    out << "\n";
  }
}

PotentialSpec potential_of(const JobSpec& job) {
  if (job.a.empty()) return PotentialSpec::zero(job.m);
  return PotentialSpec(job.m, job.a);
}

std::pair<int, int> window_of(const JobSpec& job) {
  if (!job.n_lo || !job.n_hi)
    throw Error(ErrorKind::input, std::string(to_string(job.command)) + " requires --n lo:hi");
  return {*job.n_lo, *job.n_hi};
}

std::vector<EigenvalueRecord> run_scan(const JobSpec& job, const AsymptoticModel& model) {
  auto [lo, hi] = window_of(job);
  ShootingProblem prob{model.potential(), model.boundary()};
  return scan(prob, model, lo, hi, job.shooting);
}

std::vector<EigenPoint> read_eigenvalues(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input, "cannot open input file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::input, "input file '" + path + "' is not valid JSON: " + e.what());
  }
  // A shoot/compare JSON artifact is accepted as well as a bare array.
  const json& items = doc.is_object() && doc.contains("rows") ? doc["rows"] : doc;
  if (!items.is_array()) throw Error(ErrorKind::input, "input must be a JSON array of {n, re, im}");
  std::vector<EigenPoint> eigs;
  try {
    for (const auto& item : items)
      eigs.push_back({item.at("n").get<int>(), {item.at("re").get<double>(), item.at("im").get<double>()}});
  } catch (const json::exception& e) {
    throw Error(ErrorKind::input, std::string("input entry lacks n/re/im: ") + e.what());
  }
  return eigs;
}

Table job_asym(const JobSpec& job, const AsymptoticModel& model) {
  auto [lo, hi] = window_of(job);
  Table table{{"n", "re", "im"}, {}};
  for (int n = lo; n <= hi; ++n) {
    const cplx E = eval_asym_E(model, n);
    table.add({static_cast<long long>(n), E.real(), E.imag()});
  }
  return table;
}

Table job_shoot(const JobSpec& job, const AsymptoticModel& model) {
  Table table{{"n", "re", "im", "residual", "counting_re", "counting_im"}, {}};
  for (const auto& rec : run_scan(job, model))
    table.add({static_cast<long long>(rec.n), rec.E.real(), rec.E.imag(), rec.residual,
               rec.counting_value.real(), rec.counting_value.imag()});
  return table;
}

Table job_compare(const JobSpec& job, const AsymptoticModel& model) {
  Table table{{"n", "re", "im", "asym_re", "asym_im", "rel_error", "counting_re", "counting_im", "r_n"},
              {}};
  for (const auto& rec : run_scan(job, model)) {
    const cplx asym = eval_asym_E(model, rec.n);
    const double rel = std::abs(rec.E - asym) / std::abs(rec.E);
    const double r_n = std::abs(rec.counting_value - (rec.n + model.offset()));
    table.add({static_cast<long long>(rec.n), rec.E.real(), rec.E.imag(), asym.real(), asym.imag(),
               rel, rec.counting_value.real(), rec.counting_value.imag(), r_n});
  }
  return table;
}

Table job_count(const JobSpec& job, const AsymptoticModel& model) {
  if (job.t.empty()) throw Error(ErrorKind::input, "count requires --t");
  const auto records = run_scan(job, model);
  Table table{{"t", "N_numeric", "N_asym", "titchmarsh"}, {}};
  for (double t : job.t) {
    const NumericCount numeric = N_numeric(records, t);
    if (numeric.beyond_coverage)
      throw Error(ErrorKind::coverage, "t=" + format_double(t) +
                                           " exceeds the largest scanned |E|; widen --n");
    double titchmarsh = std::nan("");
    try {
      titchmarsh = titchmarsh_count(model.potential(), t);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::precondition) throw;
    }
    table.add({static_cast<long long>(numeric.count), N_asym(model, t), titchmarsh});
    table.rows.back().insert(table.rows.back().begin(), t);
  }
  return table;
}

Table job_invert(const JobSpec& job, const AsymptoticModel& model) {
  InverseProblem ip;
  ip.m = job.m;
  ip.bc = model.boundary();
  ip.J = job.J;
  if (!job.input.empty()) {
    ip.eigs = read_eigenvalues(job.input);
  } else {
    for (const auto& rec : run_scan(job, model)) ip.eigs.push_back({rec.n, rec.E});
  }
  const FitResult fit = fit_e(ip);
  const Recovery rec = recover_a_detailed(job.m, ip.bc, fit.e_hat);
  Table table{{"k", "a_re", "a_im", "e_re", "e_im", "std_error", "condition", "rms_residual"}, {}};
  for (int k = 1; k <= job.J; ++k) {
    const cplx a = rec.a_hat[k - 1];
    const cplx e = fit.e_hat[k - 1];
    table.add({static_cast<long long>(k), a.real(), a.imag(), e.real(), e.imag(),
               fit.std_error[k - 1], fit.condition, fit.rms_residual});
  }
  return table;
}

Table job_check_k(const JobSpec& job, bool& all_ok) {
  Table table{{"m", "j", "k", "closed", "quad", "diff"}, {}};
  all_ok = true;
  for (int j = 0; j <= (job.m + 2) / 2; ++j) {
    for (int k = 0; k <= j; ++k) {
      if (!k_index_legal(job.m, j, k)) continue;
      const double closed = K_closed(job.m, j, k);
      const double quad = K_quad(job.m, j, k);
      const double diff = std::abs(closed - quad);
      all_ok = all_ok && diff <= 1e-8;
      table.add({static_cast<long long>(job.m), static_cast<long long>(j),
                 static_cast<long long>(k), closed, quad, diff});
    }
  }
  return table;
}

Table job_check_l(const JobSpec& job) {
  const PotentialSpec p = potential_of(job);
  std::vector<cplx> lambdas = job.lambdas;
  if (lambdas.empty()) lambdas = {100.0, 1000.0, 10000.0};
  Table table{{"lambda_re", "lambda_im", "L_quad_re", "L_quad_im", "L_series_re", "L_series_im", "diff"},
              {}};
  for (cplx lambda : lambdas) {
    const cplx quad = L_quad(p, lambda);
    const cplx series = L_series(p, lambda);
    table.add({lambda.real(), lambda.imag(), quad.real(), quad.imag(), series.real(), series.imag(),
               std::abs(quad - series)});
  }
  return table;
}

}  // namespace

int run(const JobSpec& job, std::ostream& out) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!job.output.empty()) {
    file.open(job.output);
    if (!file) throw Error(ErrorKind::input, "cannot open output file '" + job.output + "'");
    sink = &file;
  }

  if (job.command == Command::check_k) {
    if (job.m < 3) throw Error(ErrorKind::input, "--m must be >= 3");
    bool all_ok = true;
    write_table(job, job_check_k(job, all_ok), *sink);
    if (!all_ok)
      throw Error(ErrorKind::quadrature, "check-k: |K_closed - K_quad| exceeds 1e-8");
    return 0;
  }
  if (job.command == Command::check_l) {
    write_table(job, job_check_l(job), *sink);
    return 0;
  }

  const AsymptoticModel model(potential_of(job), BoundaryCondition(job.alpha, job.beta));
  Table table;
  switch (job.command) {
    case Command::asym: table = job_asym(job, model); break;
    case Command::shoot: table = job_shoot(job, model); break;
    case Command::compare: table = job_compare(job, model); break;
    case Command::count: table = job_count(job, model); break;
    case Command::invert: table = job_invert(job, model); break;
    default: break;
  }
  write_table(job, table, *sink);
  return 0;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto job = parse_args(argc, argv, out);
    if (!job) return 0;
    return run(*job, out);
  } catch (const Error& e) {
    err << "halfline: error exit=" << exit_code(e.kind()) << " kind=" << to_string(e.kind())
        << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "halfline: error exit=3 kind=internal: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace halfline::cli
