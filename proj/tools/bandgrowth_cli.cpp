// bandgrowth: command-line driver for the band-growth library.
//
// Every command prints a JSON report on stdout; --out DIR additionally writes
// the report and any CSV/SVG/matrix artifacts there.
//
// Exit codes: 0 ok, 2 usage or parse error, 3 window exhausted,
// 4 verification failure, 5 internal invariant breach, 6 resource guard.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bandgrowth/analyze.hpp"
#include "bandgrowth/block_structure.hpp"
#include "bandgrowth/construct.hpp"
#include "bandgrowth/growth.hpp"
#include "bandgrowth/io.hpp"
#include "bandgrowth/recipes.hpp"
#include "bandgrowth/samples.hpp"
#include "bandgrowth/tridiag.hpp"

namespace fs = std::filesystem;
using namespace bandgrowth;

namespace {

constexpr int kOk = 0, kUsage = 2, kWindow = 3, kVerify = 4, kInternal = 5, kResource = 6;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::WindowExhausted: return kWindow;
    case ErrorKind::DeclaredCurveViolation:
    case ErrorKind::ZeroProfile:
    case ErrorKind::InsufficientData:
    case ErrorKind::NotColumnFinite:
    case ErrorKind::NotAnIdempotentImage: return kVerify;
    case ErrorKind::InvariantBreach:
    case ErrorKind::RecipeNotFound: return kInternal;
    case ErrorKind::ResourceLimit: return kResource;
    default: return kUsage;
  }
}

struct Options {
  std::string field = "gfp:7";
  std::string r = "1/2";
  std::string s;
  std::size_t window = 0;
  std::size_t max_len = 3;
  std::string seed = "0xB4AD";
  std::string out;
  bool svg = false;
};

struct Context {
  Field field;
  std::uint64_t seed;
  std::optional<fs::path> out;
  bool svg;
};

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "seed must be a 64-bit integer (decimal or 0x hex), got '" + text + "'");
  }
}

double parse_real(const std::string& text) { return Ratio::parse(text).value(); }

void emit(const Context& ctx, const std::string& name, const Json& report) {
  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (ctx.out) write_text(*ctx.out / (name + ".json"), text);
}

void artifact(const Context& ctx, const std::string& file, const std::string& text) {
  if (ctx.out) write_text(*ctx.out / file, text);
}

// Builtin names: identity, shift, shift_t, R:r=<ratio>, power:c=<c>,s=<s>.
std::map<std::string, std::string> builtin_args(const std::string& spec, std::string& head) {
  std::map<std::string, std::string> args;
  const auto colon = spec.find(':');
  head = spec.substr(0, colon);
  if (colon == std::string::npos) return args;
  std::stringstream rest(spec.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "builtin argument '" + item + "' is not key=value");
    args[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return args;
}

LazyMatrix builtin(const std::string& spec, const Context& ctx, std::size_t window) {
  std::string head;
  auto args = builtin_args(spec, head);
  const Field f = ctx.field;
  auto next = [](std::size_t i) { return i + 1; };
  if (head == "identity") {
    return LazyMatrix("identity", f, GrowthCurve::power(1, 0),
                      [f](std::size_t i, std::size_t j) { return i == j ? f.one() : f.zero(); });
  }
  if (head == "shift" || head == "shift_t") {
    const bool t = head == "shift_t";
    return LazyMatrix(head, f, GrowthCurve::power(1, 0),
                      [f, t](std::size_t i, std::size_t j) { return (t ? i == j + 1 : j == i + 1) ? f.one() : f.zero(); },
                      Support{next, next});
  }
  if (head == "R") {
    const Ratio r = Ratio::parse(args.count("r") ? args["r"] : "1/2");
    auto bs = std::make_shared<const BlockStructure>(r, false, window);
    return embed_R(bs, BlockDiagonalElement::random(f, ctx.seed), "R");
  }
  if (head == "power") {
    const double c = args.count("c") ? parse_real(args["c"]) : 2.0;
    const double s = args.count("s") ? parse_real(args["s"]) : 0.5;
    return random_power_lazy(f, c, s, 0.3, ctx.seed);
  }
  throw Error(ErrorKind::ParseError, "unknown builtin '" + spec + "'");
}

WindowMatrix load(const std::string& what, const Context& ctx, std::size_t window) {
  if (fs::exists(what)) {
    WindowMatrix w = read_matrix_file(what);
    if (!(w.field() == ctx.field)) throw Error(ErrorKind::ConfigMismatch, what + " is over " + w.field().to_string());
    return w;
  }
  return make_window(builtin(what, ctx, window), window);
}

std::shared_ptr<const BlockStructure> padded_structure(const std::string& r, std::size_t K) {
  return std::make_shared<const BlockStructure>(Ratio::parse(r), true, 0, K + 3);
}

int cmd_profile(const Context& ctx, const std::string& input, std::size_t window) {
  const WindowMatrix w = load(input, ctx, window ? window : 500);
  const BandProfile p = band_profile(w);
  Json rep{{"input", input}, {"window", w.size()}, {"valid_to", w.valid_to()}, {"exact_to", p.exact_to}};
  std::size_t maxg = 0;
  for (auto g : p.g) maxg = std::max(maxg, g);
  rep["max_bandwidth"] = maxg;
  try {
    rep["fit"] = to_json(fit_exponent(p, kDefaultBurnIn, true));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ZeroProfile && e.kind() != ErrorKind::InsufficientData) throw;
    rep["fit"] = nullptr;
    rep["fit_note"] = e.what();
  }
  artifact(ctx, "profile.csv", profile_csv(p));
  if (ctx.svg) {
    PlotSeries s{"g(k)", {}, {}};
    for (std::size_t k = 1; k <= p.size(); ++k) s.x.push_back(double(k)), s.y.push_back(double(p(k)));
    artifact(ctx, "profile.svg", svg_plot("band profile", "position", "bandwidth", {s}));
  }
  emit(ctx, "profile", rep);
  return kOk;
}

int cmd_construct(const Context& ctx, const std::string& r_text, std::size_t window, bool padded) {
  const Ratio r = Ratio::parse(r_text);
  const std::size_t n = window ? window : 500;
  auto bs = std::make_shared<const BlockStructure>(r, padded, n);
  Json rep{{"r", r.to_string()}, {"t", bs->t().to_string()}, {"padded", padded}, {"window", n}};
  Json blocks = Json::array();
  for (std::size_t k = 1; k <= bs->blocks(); ++k) blocks.push_back({{"k", k}, {"size", bs->size(k)}, {"start", bs->start(k)}});
  rep["blocks"] = std::move(blocks);
  bool ok = true;
  const double rv = r.value();
  // A random element of R must sit inside W_r(2(t+1)).
  const WindowMatrix x = make_window(embed_R(bs, BlockDiagonalElement::random(ctx.field, ctx.seed)), n);
  const double c = 2 * (bs->t().value() + 1);
  rep["R_sample"] = {{"c", c}, {"minimal_constant", minimal_constant(x, rv)}, {"in_W_r_c", verify_growth(x, c, rv)}};
  ok = ok && verify_growth(x, c, rv);
  if (padded) {
    const GeneratorSet gs = default_generators(bs, ctx.field);
    Json gens = Json::array();
    for (const auto& g : gs.generators()) {
      const WindowMatrix w = make_window(g.matrix, n);
      const bool pass = verify_growth(w, g.constant, rv);
      ok = ok && pass;
      gens.push_back({{"name", g.name},
                      {"declared", g.matrix.declared_curve().describe()},
                      {"constant", g.constant},
                      {"minimal_constant", minimal_constant(w, rv)},
                      {"passes", pass}});
    }
    rep["generators"] = std::move(gens);
    rep["generator_count"] = gs.generators().size();
  }
  rep["pass"] = ok;
  emit(ctx, "construct", rep);
  return ok ? kOk : kVerify;
}

int cmd_keyprop(const Context& ctx, const std::string& r, std::size_t K) {
  const GeneratorSet gs = default_generators(padded_structure(r, K), ctx.field);
  const KeyPropertyReport kp = key_property(gs, K);
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "k,size,recipes,inexact,max_length,max_products,route\n";
  for (const auto& row : kp.rows) {
    rows.push_back({{"k", row.k},
                    {"size", row.size},
                    {"recipes", row.recipes},
                    {"inexact", row.inexact},
                    {"max_length", row.max_length},
                    {"max_products", row.max_products},
                    {"route", row.route}});
    csv << row.k << ',' << row.size << ',' << row.recipes << ',' << row.inexact << ',' << row.max_length << ','
        << row.max_products << ',' << row.route << '\n';
  }
  Json rep{{"r", r},
           {"K", K},
           {"window", kp.window},
           {"all_exact", kp.all_exact},
           {"C", kp.bound_constant},
           {"fit_log2_squared", {{"slope", kp.squared_log_fit.slope}, {"intercept", kp.squared_log_fit.intercept}, {"r2", kp.squared_log_fit.r2}}},
           {"fit_log2", {{"slope", kp.log_fit.slope}, {"intercept", kp.log_fit.intercept}, {"r2", kp.log_fit.r2}}},
           {"length_convention", "longest word of the combination"},
           {"rows", std::move(rows)}};
  artifact(ctx, "keyprop.csv", csv.str());
  if (ctx.svg) {
    PlotSeries s{"max word length", {}, {}}, b{"C (log2(k+1))^2", {}, {}};
    for (const auto& row : kp.rows) {
      const double lg = std::log2(double(row.k) + 1);
      s.x.push_back(double(row.k)), s.y.push_back(double(row.max_length));
      b.x.push_back(double(row.k)), b.y.push_back(kp.bound_constant * lg * lg);
    }
    artifact(ctx, "keyprop.svg", svg_plot("matrix-unit recipe length", "k", "products", {s, b}));
  }
  emit(ctx, "keyprop", rep);
  return kp.all_exact ? kOk : kVerify;
}

int cmd_cross(const Context& ctx, const std::string& r, std::size_t K) {
  const GeneratorSet gs = default_generators(padded_structure(r, K), ctx.field);
  bool ok = true;
  Json rows = Json::array();
  for (const auto& row : cross_series(gs, K)) {
    ok = ok && row.check.pass();
    rows.push_back({{"k", row.k},
                    {"length", row.length},
                    {"gamma_exact", row.check.gamma_exact},
                    {"gamma_prime_exact", row.check.gamma_prime_exact},
                    {"gamma_prime_gamma_is_e11_k", row.check.left_product},
                    {"gamma_gamma_prime_is_e11_k+1", row.check.right_product}});
  }
  emit(ctx, "cross", Json{{"r", r}, {"K", K}, {"pass", ok}, {"rows", std::move(rows)}});
  return ok ? kOk : kVerify;
}

int cmd_tridiag(const Context& ctx, const std::vector<std::string>& inputs, std::size_t window, std::size_t k,
                std::size_t bandwidth) {
  std::vector<WindowMatrix> xs;
  const std::size_t n = window ? window : 300;
  if (inputs.empty()) {
    Rng rng(ctx.seed);
    for (std::size_t i = 0; i < k; ++i) xs.push_back(random_banded(ctx.field, n, bandwidth, 0.6, rng));
  } else {
    for (const auto& in : inputs) xs.push_back(load(in, ctx, n));
  }
  const TridiagResult res = block_tridiagonalize(xs);
  const LinearGrowthCertificate cert = linear_growth_certificate(res.report, res.transformed);
  Json rep = to_json(res.report);
  rep["certificate"] = {{"c", cert.c}, {"bound", cert.bound}, {"pass", cert.pass}};
  artifact(ctx, "basis_change.json", matrix_to_json(res.report.basis_change).dump() + "\n");
  artifact(ctx, "basis_inverse.json", matrix_to_json(res.report.inverse).dump() + "\n");
  for (std::size_t i = 0; i < res.transformed.size(); ++i) {
    artifact(ctx, "transformed_" + std::to_string(i + 1) + ".json", matrix_to_json(res.transformed[i]).dump() + "\n");
  }
  emit(ctx, "tridiag", rep);
  const bool ok = res.report.similarity_exact && res.report.within_relative_bound;
  return ok ? kOk : kVerify;
}

int cmd_step1(const Context& ctx, const std::string& s_list, double c, std::size_t m_max) {
  std::vector<double> ss;
  {
    std::stringstream in(s_list.empty() ? "0,1/4,1/2,3/4" : s_list);
    std::string item;
    while (std::getline(in, item, ',')) ss.push_back(parse_real(item));
  }
  const std::vector<double> grid{1e2, 1e3, 1e4, 1e5, 1e6};
  Json reports = Json::array();
  std::ostringstream csv;
  csv << "s,m,n,b,ratio\n";
  bool ok = true;
  for (double s : ss) {
    const PowerGrowthReport rep = power_growth_check(c, s, m_max, grid, s == 1.0);
    ok = ok && (rep.pass || rep.exponential_regime);
    reports.push_back(to_json(rep));
    for (const auto& x : rep.samples) csv << s << ',' << x.m << ',' << x.n << ',' << x.bound << ',' << x.ratio << '\n';
  }
  artifact(ctx, "step1.csv", csv.str());
  emit(ctx, "step1", Json{{"c", c}, {"m_max", m_max}, {"reports", std::move(reports)}});
  return ok ? kOk : kVerify;
}

int cmd_stretch(const Context& ctx, const std::string& r_text, const std::string& s_text, double c, std::size_t window) {
  const std::size_t n = window ? window : 10000;
  auto bs = std::make_shared<const BlockStructure>(Ratio::parse(r_text), false, 0, 64);
  const StretchEmbedding st(bs, s_text.empty() ? bs->r().value() / 2 : parse_real(s_text), c);
  Json placements = Json::array();
  for (std::size_t k = 1; k <= st.blocks_placed() && st.placement(k) <= n; ++k) {
    placements.push_back({{"k", k}, {"size", bs->size(k)}, {"p", st.placement(k)}});
  }
  const std::size_t w = std::min(n, st.covered());
  Rng rng(ctx.seed);
  bool ok = true;
  std::size_t checked = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = BlockDiagonalElement::random(ctx.field, rng());
    const auto y = BlockDiagonalElement::random(ctx.field, rng());
    const WindowMatrix sx = make_window(st.apply(x), w), sy = make_window(st.apply(y), w);
    const WindowMatrix sxy = make_window(st.apply(x * y), w);
    const WindowMatrix prod = mul(sx, sy);
    ok = ok && prod.equal_on(sxy, prod.valid_to()) && verify_growth(sx, st.c(), st.s());
    ++checked;
  }
  const WindowMatrix one = make_window(st.apply(BlockDiagonalElement::identity(ctx.field)), w);
  const bool unital = one.equal_on(WindowMatrix::identity(ctx.field, w), w);
  ok = ok && unital;
  emit(ctx, "stretch",
       Json{{"r", bs->r().to_string()}, {"s", st.s()}, {"c", st.c()}, {"window", w}, {"placements", std::move(placements)},
            {"homomorphism_pairs", checked}, {"unital", unital}, {"pass", ok}});
  return ok ? kOk : kVerify;
}

int cmd_estimate(const Context& ctx, const std::vector<std::string>& inputs, std::size_t L, std::size_t window) {
  const std::size_t n = window ? window : 10000;
  std::vector<WindowMatrix> gens;
  std::vector<std::string> names = inputs.empty() ? std::vector<std::string>{"R:r=1/3"} : inputs;
  Context local = ctx;
  for (std::size_t i = 0; i < names.size(); ++i) {
    // Each builtin generator gets its own stream; repeated names stay distinct.
    local.seed = ctx.seed + i;
    gens.push_back(load(names[i], local, n));
    if (names.size() == 1 && names[0].rfind("R", 0) == 0) {
      local.seed = ctx.seed + 1;
      gens.push_back(load(names[0], local, n));
    }
  }
  const GrowthEstimate est = estimate_growth(gens, L, ctx.seed);
  Json rep = to_json(est);
  rep["inputs"] = names;
  std::ostringstream csv;
  csv << "position,bandwidth\n";
  for (std::size_t k = 0; k < est.envelope.size(); ++k) csv << k + 1 << ',' << est.envelope[k] << '\n';
  artifact(ctx, "envelope.csv", csv.str());
  emit(ctx, "estimate", rep);
  return kOk;
}

int cmd_free(const Context& ctx, const std::string& x_in, const std::string& y_in, std::size_t L, std::size_t window) {
  const std::size_t n = window ? window : std::max<std::size_t>(128, std::size_t{1} << (L + 1));
  WindowMatrix x(ctx.field, 1), y(ctx.field, 1);
  if (x_in == "random" || x_in.empty()) {
    Rng rng(ctx.seed);
    x = random_banded(ctx.field, n, 2, 0.7, rng);
    y = random_banded(ctx.field, n, 2, 0.7, rng);
  } else {
    x = load(x_in, ctx, n);
    y = load(y_in.empty() ? x_in : y_in, ctx, n);
  }
  const FreenessResult fr = freeness_check(x, y, L);
  Json rep = to_json(fr);
  rep["L"] = L;
  rep["window"] = x.size();
  emit(ctx, "free", rep);
  return fr.independent || fr.witness_vanishes ? kOk : kVerify;
}

int cmd_report(const Context& ctx, const std::string& r, std::size_t K) {
  const GeneratorSet gs = default_generators(padded_structure(r, K), ctx.field);
  const KeyPropertyReport kp = key_property(gs, K);
  PlacementEmbedding theta(gs.structure_ptr(), ctx.field);
  const ConstantsSeries cs = constants_series(theta, Ratio::parse(r).value(), K);
  Json scatter = Json::array();
  for (std::size_t k = 1; k <= std::min<std::size_t>(K, 8); ++k) scatter.push_back(to_json(scatter_report(theta, k)));
  Json rep{{"r", r},
           {"K", K},
           {"keyprop", {{"all_exact", kp.all_exact}, {"C", kp.bound_constant}, {"r2_log2_squared", kp.squared_log_fit.r2}}},
           {"constants", to_json(cs)},
           {"scatter", std::move(scatter)}};
  if (ctx.svg) {
    PlotSeries run{"c_k (running max)", {}, {}};
    for (std::size_t k = 1; k <= cs.running.size(); ++k) run.x.push_back(double(k)), run.y.push_back(cs.running[k - 1]);
    artifact(ctx, "constants.svg", svg_plot("minimal constants", "k", "c_k", {run}));
  }
  emit(ctx, "report", rep);
  return kp.all_exact ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bandgrowth: band profiles, growth curves and block constructions over exact fields"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--field", o.field, "gfp:<p> or q")->capture_default_str();
  app.add_option("--seed", o.seed, "64-bit seed (decimal or 0x hex)")->capture_default_str();
  app.add_option("--out", o.out, "directory for report, CSV, SVG and matrix files");
  app.add_flag("--svg", o.svg, "also write SVG plots (with --out)");

  std::string input, x_in, y_in, s_list;
  std::vector<std::string> inputs;
  std::size_t K = 16, k_gens = 2, bandwidth = 3, m_max = 64;
  bool padded = false;
  double c = 1.0;

  auto* profile = app.add_subcommand("profile", "band profile and exponent fit of a matrix");
  profile->add_option("input", input, "matrix file or builtin (identity, shift, shift_t, R:r=1/2, power:c=2,s=1/2)")->required();
  profile->add_option("--window", o.window, "window size (builtins)");

  auto* construct = app.add_subcommand("construct", "block structure, R sample and generator growth checks");
  construct->add_option("--r", o.r, "exponent r in (0,1)")->capture_default_str();
  construct->add_option("--window", o.window, "window size");
  construct->add_flag("--padded", padded, "round block sizes up to powers of two");

  auto* keyprop = app.add_subcommand("keyprop", "verify matrix-unit recipes for blocks 1..K");
  keyprop->add_option("--r", o.r)->capture_default_str();
  keyprop->add_option("--max-k,-K", K)->capture_default_str();

  auto* cross = app.add_subcommand("cross", "verify cross elements between blocks k and k+1");
  cross->add_option("--r", o.r)->capture_default_str();
  cross->add_option("--max-k,-K", K)->capture_default_str();

  auto* tridiag = app.add_subcommand("tridiag", "simultaneous block tridiagonalization");
  tridiag->add_option("inputs", inputs, "matrix files (random banded matrices when omitted)");
  tridiag->add_option("--window", o.window);
  tridiag->add_option("--k", k_gens, "number of random matrices")->capture_default_str();
  tridiag->add_option("--bandwidth", bandwidth, "bandwidth of random matrices")->capture_default_str();

  auto* step1 = app.add_subcommand("step1", "power growth of products in W_s(c)");
  step1->add_option("--s", s_list, "comma separated exponents (default 0,1/4,1/2,3/4)");
  step1->add_option("--c", c)->capture_default_str();
  step1->add_option("--m-max", m_max)->capture_default_str();

  auto* stretch = app.add_subcommand("stretch", "stretch embedding of R into W_s(c)");
  stretch->add_option("--r", o.r)->capture_default_str();
  stretch->add_option("--s", o.s, "target exponent (default r/2)");
  stretch->add_option("--c", c)->capture_default_str();
  stretch->add_option("--window", o.window);

  auto* estimate = app.add_subcommand("estimate", "representation growth exponent from word envelopes");
  estimate->add_option("inputs", inputs, "matrix files or builtins (default: two R:r=1/3 samples)");
  estimate->add_option("--max-len", o.max_len)->capture_default_str();
  estimate->add_option("--window", o.window);

  auto* free_cmd = app.add_subcommand("free", "linear independence of words in two matrices");
  free_cmd->add_option("x", x_in, "matrix file, builtin, or 'random' (default)");
  free_cmd->add_option("y", y_in, "matrix file or builtin");
  free_cmd->add_option("--max-len", o.max_len)->capture_default_str();
  free_cmd->add_option("--window", o.window);

  auto* report = app.add_subcommand("report", "key property, constants series and scatter summary");
  report->add_option("--r", o.r)->capture_default_str();
  report->add_option("--max-k,-K", K)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    Context ctx{Field::parse(o.field), parse_seed(o.seed), std::nullopt, o.svg};
    if (!o.out.empty()) ctx.out = fs::path(o.out);
    if (*profile) return cmd_profile(ctx, input, o.window);
    if (*construct) return cmd_construct(ctx, o.r, o.window, padded);
    if (*keyprop) return cmd_keyprop(ctx, o.r, K);
    if (*cross) return cmd_cross(ctx, o.r, K);
    if (*tridiag) return cmd_tridiag(ctx, inputs, o.window, k_gens, bandwidth);
    if (*step1) return cmd_step1(ctx, s_list, c, m_max);
    if (*stretch) return cmd_stretch(ctx, o.r, o.s, c, o.window);
    if (*estimate) return cmd_estimate(ctx, inputs, o.max_len, o.window);
    if (*free_cmd) return cmd_free(ctx, x_in, y_in, o.max_len, o.window);
    if (*report) return cmd_report(ctx, o.r, K);
  } catch (const Error& e) {
    std::cerr << "bandgrowth: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    std::cerr << "bandgrowth: out of memory\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "bandgrowth: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
