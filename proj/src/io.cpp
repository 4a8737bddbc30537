#include "bandgrowth/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bandgrowth {

Json field_to_json(const Field& f) {
  if (f.is_prime()) return Json{{"kind", "gfp"}, {"p", f.characteristic()}};
  return Json{{"kind", "q"}};
}

Field field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw Error(ErrorKind::ParseError, "field must be an object with a \"kind\"");
  }
  const std::string kind = j["kind"];
  if (kind == "q") return Field::rationals();
  if (kind == "gfp") {
    if (!j.contains("p") || !j["p"].is_number_unsigned()) throw Error(ErrorKind::ParseError, "gfp field needs \"p\"");
    try {
      return Field::prime(j["p"].get<std::uint64_t>());
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
  }
  throw Error(ErrorKind::ParseError, "unknown field kind '" + kind + "'");
}

Json matrix_to_json(const WindowMatrix& w) {
  Json entries = Json::array();
  for (const auto& t : w.triplets()) entries.push_back(Json::array({t.row, t.col, t.value.to_string()}));
  return Json{{"field", field_to_json(w.field())}, {"window", w.size()}, {"entries", std::move(entries)}};
}

WindowMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("field") || !j.contains("window") || !j.contains("entries")) {
    throw Error(ErrorKind::ParseError, "matrix file needs \"field\", \"window\" and \"entries\"");
  }
  const Field f = field_from_json(j["field"]);
  if (!j["window"].is_number_unsigned() || j["window"].get<std::uint64_t>() < 1) {
    throw Error(ErrorKind::ParseError, "\"window\" must be a positive integer");
  }
  const auto n = j["window"].get<std::size_t>();
  if (!j["entries"].is_array()) throw Error(ErrorKind::ParseError, "\"entries\" must be an array");
  std::vector<Triplet> ts;
  for (const auto& e : j["entries"]) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
      throw Error(ErrorKind::ParseError, "entry must be [i, j, value]");
    }
    std::string v;
    if (e[2].is_string()) {
      v = e[2].get<std::string>();
    } else if (e[2].is_number_integer()) {
      v = std::to_string(e[2].get<long long>());
    } else {
      throw Error(ErrorKind::ParseError, "entry value must be a string or an integer");
    }
    ts.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), f.parse_scalar(v)});
  }
  return WindowMatrix::from_triplets(f, n, std::move(ts));
}

WindowMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path.string() + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
  return matrix_from_json(j);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + path.string() + "'");
  out << text;
}

std::string profile_csv(const BandProfile& p) {
  std::ostringstream os;
  os << "position,bandwidth\n";
  for (std::size_t k = 1; k <= p.size(); ++k) os << k << ',' << p(k) << '\n';
  return os.str();
}

Json to_json(const ExponentFit& fit) {
  return Json{{"c", fit.c}, {"s", fit.s}, {"residual", fit.residual}, {"points", fit.points}};
}

Json to_json(const PowerGrowthReport& rep, bool with_samples) {
  Json j{{"c", rep.c},
         {"s", rep.s},
         {"m_max", rep.m_max},
         {"n_samples", rep.n_samples},
         {"d", rep.d},
         {"worst_ratio", rep.worst_ratio},
         {"worst_m", rep.worst_m},
         {"worst_n", rep.worst_n},
         {"exponential_regime", rep.exponential_regime},
         {"pass", rep.pass}};
  if (with_samples) {
    Json s = Json::array();
    for (const auto& x : rep.samples) s.push_back({{"m", x.m}, {"n", x.n}, {"b", x.bound}, {"ratio", x.ratio}});
    j["samples"] = std::move(s);
  }
  return j;
}

Json to_json(const FlagReport& rep) {
  Json v = Json::array();
  for (const auto& x : rep.violations) {
    v.push_back({{"matrix", x.matrix}, {"row", x.row}, {"col", x.col}, {"row_block", x.row_block}, {"col_block", x.col_block}});
  }
  return Json{{"generators", rep.generators},
              {"block_dims", rep.block_dims},
              {"cumulative_dims", rep.cumulative_dims},
              {"strict", rep.strict},
              {"orthogonal", rep.orthogonal},
              {"exhaustion_insertions", rep.exhaustion_insertions},
              {"within_geometric_bound", rep.within_geometric_bound},
              {"within_relative_bound", rep.within_relative_bound},
              {"similarity_exact", rep.similarity_exact},
              {"violations", std::move(v)}};
}

Json to_json(const GrowthEstimate& est) {
  return Json{{"label", kEstimateLabel},   {"max_len", est.max_len}, {"window", est.window},
              {"exact_to", est.exact_to},  {"words", est.words},     {"sampled", est.sampled},
              {"fit", to_json(est.fit)}};
}

Json to_json(const ConstantsSeries& cs) {
  return Json{{"s", cs.s},
              {"raw", cs.raw},
              {"running", cs.running},
              {"consecutive", cs.consecutive},
              {"all_pairs", cs.all_pairs},
              {"ratio_to_log_bound", cs.ratio}};
}

Json to_json(const ScatterReport& sr) {
  return Json{{"k", sr.k},
              {"first_rows", sr.first_rows},
              {"min_gap", sr.min_gap},
              {"max_position", sr.max_position},
              {"distinct", sr.distinct}};
}

Json to_json(const Combination& c) {
  Json terms = Json::array();
  for (const auto& t : c.terms) terms.push_back({{"coeff", t.coeff.to_string()}, {"word", t.word}});
  return terms;
}

Json to_json(const FreenessResult& fr) {
  Json w = Json::array();
  for (const auto& [c, word] : fr.witness) w.push_back({{"coeff", c.to_string()}, {"word", to_string(word)}});
  return Json{{"independent", fr.independent},
              {"words", fr.words},
              {"rank", fr.rank},
              {"region", fr.region},
              {"witness", std::move(w)},
              {"witness_vanishes", fr.witness_vanishes}};
}

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<PlotSeries>& series) {
  constexpr double W = 640, H = 400, L = 60, R = 20, T = 40, B = 50;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    for (double v : s.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
    for (double v : s.y) y0 = std::min(y0, v), y1 = std::max(y1, v);
  }
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  auto px = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n"
     << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"12\">" << xlabel << " ["
     << x0 << ", " << x1 << "]</text>\n"
     << "<text x=\"14\" y=\"" << H / 2 << "\" font-size=\"12\" transform=\"rotate(-90 14," << H / 2 << ")\">" << ylabel
     << " [" << y0 << ", " << y1 << "]</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    os << "<polyline fill=\"none\" stroke=\"" << colors[i % 5] << "\" points=\"";
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) os << px(s.x[k]) << ',' << py(s.y[k]) << ' ';
    os << "\"/>\n<text x=\"" << W - R - 150 << "\" y=\"" << T + 16 * (i + 1) << "\" font-size=\"12\" fill=\"" << colors[i % 5]
       << "\">" << s.label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace bandgrowth
