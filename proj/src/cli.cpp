#include "fracspec/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracspec/acceptance.hpp"
#include "fracspec/cuntz.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/fourier.hpp"
#include "fracspec/hutchinson.hpp"
#include "fracspec/spec_io.hpp"
#include "fracspec/spectral_pair.hpp"
#include "fracspec/spectrum.hpp"
#include "fracspec/table.hpp"

namespace fracspec {

namespace {

using ojson = nlohmann::ordered_json;

struct Flags {
  std::string spec = "scale4";
  int enum_depth = 12;
  int first_depth = 1;
  int product_depth = 30;
  int quadrature_depth = 12;
  int box = 8;
  int word_length = 2;
  double radius = 8.0;
  std::string grid = "-8:8:161";
  std::string s = "2";
  std::uint64_t seed = 20240601;
  std::size_t samples = 100000;
  std::string format = "csv";
  std::string backend = "product";
  std::string out = "-";
  std::string frequencies_out;
  std::string data_dir = FRACSPEC_DATA_DIR;
};

TransformSettings settings_from(const Flags& f) {
  TransformSettings s;
  s.product_depth = f.product_depth;
  s.quadrature_depth = f.quadrature_depth;
  s.backend = parse_backend(f.backend);
  s.check();
  return s;
}

void emit_json(const ojson& doc, const std::string& path, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << doc.dump(2) << '\n';
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IOError("cannot open \"" + path + "\" for writing");
  file << doc.dump(2) << '\n';
  if (!file) throw IOError("write to \"" + path + "\" failed");
}

ojson complex_json(const Complex& z) { return ojson{{"re", z.real()}, {"im", z.imag()}}; }

// "lo:hi:count" per axis, comma separated; a single axis is repeated.
std::vector<RatVec> parse_grid(const std::string& text, std::size_t dim) {
  std::vector<std::vector<Rational>> axes;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::vector<std::string> parts;
    std::stringstream fields(item);
    std::string part;
    while (std::getline(fields, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw ParseError("grid axis \"" + item + "\" is not lo:hi:count");
    const Rational lo = parse_rational(parts[0]);
    const Rational hi = parse_rational(parts[1]);
    long count = 0;
    try {
      count = std::stol(parts[2]);
    } catch (const std::exception&) {
      throw ParseError("grid count \"" + parts[2] + "\" is not an integer");
    }
    if (count < 1 || count > 1000000) throw ParseError("grid count must be in [1, 1000000]");
    std::vector<Rational> axis;
    for (long k = 0; k < count; ++k) axis.push_back(count == 1 ? lo : lo + (hi - lo) * Rational(k, count - 1));
    axes.push_back(std::move(axis));
  }
  if (axes.size() == 1)
    while (axes.size() < dim) axes.push_back(axes.front());
  if (axes.size() != dim)
    throw ParseError("grid has " + std::to_string(axes.size()) + " axes, spec dimension is " + std::to_string(dim));

  std::vector<RatVec> points;
  std::vector<std::size_t> idx(dim, 0);
  while (true) {
    RatVec t(dim);
    for (std::size_t j = 0; j < dim; ++j) t[j] = axes[j][idx[j]];
    points.push_back(std::move(t));
    std::size_t k = dim;
    while (k-- > 0) {
      if (++idx[k] < axes[k].size()) break;
      idx[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return points;
}

RatVec parse_frequency(const std::string& text, std::size_t dim) {
  RatVec s = parse_rational_vector(text);
  if (s.size() != dim)
    throw ParseError("--s has " + std::to_string(s.size()) + " entries, spec dimension is " + std::to_string(dim));
  return s;
}

std::string word_label(const Word& w) {
  std::string out;
  for (const auto& ell : w.letters) out += (out.empty() ? "" : " ") + format_vec(ell);
  return out;
}

int cmd_validate(const Flags& f, std::ostream& out) {
  const auto loaded = parse_spec(f.spec);
  ojson doc;
  doc["spec"] = loaded.document.name;
  doc["report"] = ojson::parse(report_to_json(loaded.report).dump());
  ojson failing = ojson::array();
  for (const auto& c : loaded.report.checks)
    if (!c.passed) failing.push_back(c.name);
  doc["failing"] = failing;
  emit_json(doc, f.out, out);
  return loaded.report.ok() ? 0 : 1;
}

int cmd_pair(const Flags& f, std::ostream& out) {
  const auto loaded = parse_spec(f.spec);
  const auto& doc = loaded.document;
  if (!doc.omega || !doc.d_prime) throw ParseError("spec \"" + doc.name + "\" has no omega/D_prime data");
  ojson report;
  report["spec"] = doc.name;
  ojson failing = ojson::array();

  const auto spectrum = truncated_spectrum(loaded.spec, f.radius);
  const auto gram = orthogonality_matrix(*doc.omega, spectrum);
  double worst = 0.0;
  std::size_t exact_zeros = 0, pairs = 0;
  const auto n = gram.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      ++pairs;
      if (gram(i, j) == Complex(0.0, 0.0)) ++exact_zeros;
      worst = std::max(worst, std::abs(gram(i, j)));
    }
  report["orthogonality"] = {{"radius", f.radius},
                             {"points", spectrum.points.size()},
                             {"pairs", pairs},
                             {"exact_zeros", exact_zeros},
                             {"max_offdiagonal", worst}};
  if (exact_zeros != pairs) failing.push_back("orthogonality");

  const auto translates = coset_representatives(loaded.spec.K(), loaded.spec.A(), loaded.spec.digits_B());
  const BoxUnion omega_prime = reduce_mod_lattice(*doc.omega, loaded.spec.K());
  SamplingOptions sampling;
  sampling.seed = f.seed;
  sampling.samples = f.samples;
  const auto tiling = tiling_check(*doc.d_prime, loaded.spec.Gamma(), translates, omega_prime, sampling);
  report["tiling"] = {{"fundamental_domain", tiling.fundamental_domain},
                      {"fundamental_domain_exact", tiling.fundamental_domain_exact},
                      {"samples", tiling.samples},
                      {"miss_bound", tiling.miss_bound},
                      {"translates_disjoint", tiling.translates_disjoint},
                      {"covers_omega", tiling.covers_omega},
                      {"translate_measure", format_rational(tiling.translate_measure)},
                      {"omega_measure", format_rational(tiling.omega_measure)},
                      {"detail", tiling.detail}};
  if (!tiling.passed()) failing.push_back("tiling");
  report["failing"] = failing;
  emit_json(report, f.out, out);
  return failing.empty() ? 0 : 1;
}

int cmd_measure(const Flags& f, std::ostream& out) {
  const auto loaded = parse_spec(f.spec);
  RefineOptions options;
  const auto mu = refine_measure(build_ifs(loaded.spec), f.quadrature_depth, options);
  Table table;
  for (std::size_t j = 0; j < mu.dim(); ++j) table.columns.push_back("x" + std::to_string(j + 1));
  table.columns.push_back("weight");
  for (std::size_t i = 0; i < mu.size(); ++i) {
    std::vector<Cell> row;
    for (std::size_t j = 0; j < mu.dim(); ++j) row.emplace_back(mu.points()[i * mu.dim() + j]);
    row.emplace_back(mu.weight());
    table.add_row(std::move(row));
  }
  emit_table(table, parse_table_format(f.format), f.out, out);
  return 0;
}

int cmd_transform(const Flags& f, std::ostream& out) {
  const auto loaded = parse_spec(f.spec);
  const auto settings = settings_from(f);
  const FourierTransform transform(loaded.spec, settings);
  const auto grid = parse_grid(f.grid, loaded.spec.dim());
  const std::size_t d = loaded.spec.dim();

  Table table;
  for (std::size_t j = 0; j < d; ++j) table.columns.push_back(d == 1 ? "t" : "t" + std::to_string(j + 1));
  for (const char* c : {"re", "im", "abs", "backend", "depth"}) table.columns.emplace_back(c);
  if (settings.backend == Backend::both) table.columns.emplace_back("discrepancy");

  std::vector<TransformValue> values(grid.size());
  if (settings.backend == Backend::quadrature) {
    transform.measure();
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = transform.evaluate(grid[i]);
  } else {
    if (settings.backend == Backend::both) transform.measure();
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.size()); ++i)
      values[static_cast<std::size_t>(i)] = transform.evaluate(grid[static_cast<std::size_t>(i)]);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<Cell> row;
    for (const auto& x : grid[i]) row.emplace_back(to_double(x));
    const auto& v = values[i];
    row.emplace_back(v.value.real());
    row.emplace_back(v.value.imag());
    row.emplace_back(std::abs(v.value));
    row.emplace_back(to_string(v.backend));
    row.emplace_back(static_cast<std::int64_t>(v.depth));
    if (settings.backend == Backend::both) row.emplace_back(v.discrepancy);
    table.add_row(std::move(row));
  }
  emit_table(table, parse_table_format(f.format), f.out, out);
  return 0;
}

int cmd_spectrum(const Flags& f, std::ostream& out) {
  const auto loaded = parse_spec(f.spec);
  const auto settings = settings_from(f);
  const RatVec s = parse_frequency(f.s, loaded.spec.dim());
  const auto format = parse_table_format(f.format);
  const auto rows = sigma_table(loaded.spec, s, f.first_depth, f.enum_depth, settings);

  Table table{{"depth", "sigma", "increment"}, {}};
  for (const auto& r : rows) table.add_row({static_cast<std::int64_t>(r.depth), r.sigma, r.increment});
  emit_table(table, format, f.out, out);

  if (!f.frequencies_out.empty()) {
    const auto e = enumerate_spectrum(loaded.spec, f.enum_depth);
    Table freqs;
    freqs.columns.push_back("index");
    for (std::size_t j = 0; j < loaded.spec.dim(); ++j) freqs.columns.push_back("xi" + std::to_string(j + 1));
    for (std::size_t i = 0; i < e.size(); ++i) {
      std::vector<Cell> row{static_cast<std::int64_t>(i)};
      for (const auto& x : e.elements[i]) row.emplace_back(format_rational(x));
      freqs.add_row(std::move(row));
    }
    emit_table(freqs, format, f.frequencies_out, out);
  }
  return 0;
}

int cmd_cuntz(const Flags& f, std::ostream& out) {
  const auto loaded = parse_spec(f.spec);
  const auto settings = settings_from(f);
  ojson doc;
  doc["spec"] = loaded.document.name;
  ojson failing = ojson::array();
  for (const auto& c : loaded.report.checks)
    if (!c.passed) failing.push_back(c.name);

  const auto rel = relation_residuals(loaded.spec, f.box, settings);
  doc["relations"] = {{"box", rel.box},
                      {"samples", rel.samples},
                      {"isometry", rel.isometry},
                      {"range_orthogonality", rel.range_orthogonality},
                      {"range_terms", rel.range_terms},
                      {"range_exact_zeros", rel.range_exact_zeros},
                      {"completeness", rel.completeness},
                      {"degenerate", rel.degenerate}};
  if (!(rel.isometry < 1e-9)) failing.push_back("isometry");
  if (rel.range_exact_zeros != rel.range_terms) failing.push_back("range_orthogonality");
  if (!(rel.completeness < 1e-12)) failing.push_back("completeness");

  const FourierTransform transform(loaded.spec, settings);
  ojson states = ojson::array();
  states.push_back({{"alpha", ""}, {"beta", ""}, {"value", complex_json(state_eval(transform, Word{}, Word{}))}});
  for (const auto& w : all_words(loaded.spec, f.word_length)) {
    states.push_back({{"alpha", word_label(w)}, {"beta", ""}, {"value", complex_json(state_eval(transform, w, Word{}))}});
    states.push_back({{"alpha", word_label(w)}, {"beta", word_label(w)}, {"value", complex_json(state_eval(transform, w, w))}});
  }
  doc["states"] = states;
  doc["validation"] = ojson::parse(report_to_json(loaded.report).dump());
  doc["failing"] = failing;
  emit_json(doc, f.out, out);
  return failing.empty() ? 0 : 1;
}

int cmd_accept(const Flags& f, std::ostream& out) {
  AcceptanceOptions options;
  options.data_dir = f.data_dir;
  options.seed = f.seed;
  const auto results = run_acceptance(options);
  print_acceptance(results, out);
  for (const auto& r : results)
    if (!r.passed) return 1;
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Lattice spectral pairs, self-similar measures and their Fourier analysis", "fracspec"};
  app.require_subcommand(1);

  auto spec_opt = [&](CLI::App* sub) {
    sub->add_option("--spec", f.spec, "Spec file or built-in name")->capture_default_str();
  };
  auto out_opt = [&](CLI::App* sub) { sub->add_option("--out", f.out, "Output path, - for stdout")->capture_default_str(); };
  auto format_opt = [&](CLI::App* sub) {
    sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };
  auto depth_opts = [&](CLI::App* sub) {
    sub->add_option("--product-depth", f.product_depth, "Factors in the truncated product")->capture_default_str();
    sub->add_option("--quadrature-depth", f.quadrature_depth, "Depth of the atomic measure")->capture_default_str();
    sub->add_option("--backend", f.backend, "product, quadrature or both")
        ->check(CLI::IsMember({"product", "quadrature", "both"}))
        ->capture_default_str();
  };

  auto* validate = app.add_subcommand("validate", "Structural checks of a spec (JSON report)");
  spec_opt(validate);
  out_opt(validate);

  auto* pair = app.add_subcommand("pair", "Orthogonality of L + dual(Gamma) on Omega and the tiling check");
  spec_opt(pair);
  out_opt(pair);
  pair->add_option("--radius", f.radius, "Radius of the truncated frequency set")->capture_default_str();
  pair->add_option("--seed", f.seed, "Seed of the Monte-Carlo fallback")->capture_default_str();
  pair->add_option("--samples", f.samples, "Monte-Carlo samples")->capture_default_str();

  auto* measure = app.add_subcommand("measure", "Atoms of the depth-n approximation");
  spec_opt(measure);
  out_opt(measure);
  format_opt(measure);
  measure->add_option("--quadrature-depth", f.quadrature_depth, "Refinement depth")->capture_default_str();

  auto* transform = app.add_subcommand("transform", "Fourier transform on a grid");
  spec_opt(transform);
  out_opt(transform);
  format_opt(transform);
  depth_opts(transform);
  transform->add_option("--grid", f.grid, "lo:hi:count per axis, comma separated")->capture_default_str();

  auto* spectrum = app.add_subcommand("spectrum", "Partial sums sigma per enumeration depth");
  spec_opt(spectrum);
  out_opt(spectrum);
  format_opt(spectrum);
  depth_opts(spectrum);
  spectrum->add_option("--s", f.s, "Frequency, comma separated rationals")->capture_default_str();
  spectrum->add_option("--enum-depth", f.enum_depth, "Last enumeration depth")->capture_default_str();
  spectrum->add_option("--first-depth", f.first_depth, "First enumeration depth")->capture_default_str();
  spectrum->add_option("--frequencies-out", f.frequencies_out, "Also write the enumerated frequencies here");

  auto* cuntz = app.add_subcommand("cuntz", "Cuntz relation residuals and state values (JSON)");
  spec_opt(cuntz);
  out_opt(cuntz);
  depth_opts(cuntz);
  cuntz->add_option("--box", f.box, "Coefficient radius of the dual-lattice sample")->capture_default_str();
  cuntz->add_option("--word-length", f.word_length, "Longest word in the state table")->capture_default_str();

  auto* accept = app.add_subcommand("accept", "Run the acceptance suite");
  accept->add_option("--seed", f.seed, "Seed of the randomized criteria")->capture_default_str();
  accept->add_option("--data-dir", f.data_dir, "Directory with reference data")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(f, out);
    if (pair->parsed()) return cmd_pair(f, out);
    if (measure->parsed()) return cmd_measure(f, out);
    if (transform->parsed()) return cmd_transform(f, out);
    if (spectrum->parsed()) return cmd_spectrum(f, out);
    if (cuntz->parsed()) return cmd_cuntz(f, out);
    if (accept->parsed()) return cmd_accept(f, out);
  } catch (const ParseError& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const IOError& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const DepthTooLarge& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    out << ojson{{"failing", {e.what()}}}.dump(2) << '\n';
    err << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace fracspec
