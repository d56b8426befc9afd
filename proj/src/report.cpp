#include "spectral_gibbs/report.hpp"

#include <sstream>

namespace spectral_gibbs {

std::string color_label(Color c) {
  if (c < 26) return std::string(1, static_cast<char>('a' + c));
  return "c" + std::to_string(c + 1);
}

namespace {

void write_model(JsonWriter& json, std::size_t n, Color colors, double temperature) {
  json.key("model").begin_object();
  json.field("n", static_cast<std::uint64_t>(n));
  json.field("colors", colors);
  json.field("temperature", temperature);
  json.end_object();
}

void write_geometry(JsonWriter& json, const EdgeGeometry& g) {
  json.field("site", static_cast<std::uint64_t>(g.site + 1));
  json.field("color_from", color_label(g.color_from));
  json.field("color_to", color_label(g.color_to));
  json.key("neighbors").begin_array();
  if (g.left) json.value(color_label(*g.left)); else json.null();
  if (g.right) json.value(color_label(*g.right)); else json.null();
  json.end_array();
}

}  // namespace

void write_json(JsonWriter& json, const BoundReport& r) {
  json.begin_object();
  write_model(json, r.n, r.colors, r.temperature);

  json.key("bounds").begin_object();
  json.field("three_color", r.three_color);
  json.field("potts", r.potts);
  json.field("ingrassia_beta1", r.ingrassia_beta1);
  json.field("ingrassia_lambda_min", r.ingrassia_lambda_min);
  json.field("theta", r.theta);
  json.field("crossover_n", r.crossover_n);
  json.field("absolute_value_gate", r.absolute_value_gate);
  json.field("kappa_closed_form", r.kappa_closed_form);
  json.field("kappa_exact", r.kappa_exact);
  json.end_object();

  json.key("ingrassia_params").begin_object();
  json.field("C", r.ingrassia.c);
  json.field("Delta", r.ingrassia.delta);
  json.field("m", r.ingrassia.m);
  json.field("b_gamma", r.ingrassia.b_gamma);
  json.field("gamma_gamma", r.ingrassia.gamma_gamma);
  json.field("lattice_size", r.ingrassia.lattice_size);
  json.field("z_upper", r.ingrassia.z_upper);
  json.field("log_z_upper", r.log_z_upper);
  json.field("log_z_exact", r.log_z_exact);
  json.end_object();

  json.key("exact").begin_object();
  json.field("beta1", r.exact.beta1);
  json.field("beta_min", r.exact.beta_min);
  json.field("beta_star", r.exact.beta_star);
  json.end_object();

  json.key("ds_envelope").begin_object();
  json.field("start_rank", r.envelope.start);
  json.field("pi_start", r.envelope.pi_start);
  json.field("prefactor", r.envelope.prefactor);
  json.field("rate", r.envelope.rate);
  json.end_object();

  const auto& v = r.verdicts;
  json.key("verdicts").begin_object();
  json.field("three_color", to_string(v.three_color));
  json.field("potts", to_string(v.potts));
  json.field("lambda_min", to_string(v.lambda_min));
  json.field("absolute_value", to_string(v.absolute_value));
  json.field("ingrassia_beta1", to_string(v.ingrassia_beta1));
  json.field("kappa_geometric", to_string(v.kappa_geometric));
  json.field("kappa_closed_form", to_string(v.kappa_closed_form));
  json.end_object();
  json.field("all_pass", r.all_pass());
  json.end_object();
}

void write_json(JsonWriter& json, const Spectrum& s) {
  json.begin_object();
  json.field("eigenvalues", s.eigenvalues);
  json.field("beta1", s.beta1);
  json.field("beta_min", s.beta_min);
  json.field("beta_star", s.beta_star);
  json.end_object();
}

void write_json(JsonWriter& json, const KappaResult& k, const ModelSpec& spec) {
  const double closed = kappa_closed_form(spec);
  json.begin_object();
  json.field("kappa", k.kappa);
  json.key("argmax_edge").begin_object();
  json.field("from_rank", k.argmax.edge.from);
  json.field("to_rank", k.argmax.edge.to);
  write_geometry(json, k.argmax.geometry);
  json.field("load", k.argmax.load);
  json.field("q", k.argmax.q);
  json.end_object();
  json.field("closed_form", closed);
  json.field("slack", closed - k.kappa);
  json.end_object();
}

void write_json(JsonWriter& json, const TvCurve& c, const ModelSpec& spec) {
  json.begin_object();
  write_model(json, spec.sites(), spec.colors(), spec.temperature());
  json.field("start_rank", c.start);
  json.field("start", Configuration::from_rank(spec, c.start).letters());
  json.field("pi_start", c.pi_start);
  json.field("beta_star", c.beta_star);
  json.field("seed", c.seed);
  json.key("k").begin_array();
  for (auto k : c.ks) json.value(static_cast<std::uint64_t>(k));
  json.end_array();
  json.field("exact_tv", c.exact_tv);
  json.field("envelope", c.envelope);
  json.field("mc_tv", c.mc_tv);
  json.field("within_envelope", c.within_envelope());
  json.end_object();
}

std::string bound_report_csv_header() {
  return "n,colors,temperature,three_color,potts,ingrassia_beta1,ingrassia_lambda_min,theta,"
         "crossover_n,absolute_value_gate,kappa_closed_form,kappa_exact,beta1,beta_min,beta_star,"
         "all_pass";
}

std::string bound_report_csv_row(const BoundReport& r) {
  std::ostringstream row;
  row << r.n << ',' << r.colors << ',' << format_double(r.temperature) << ','
      << (r.three_color ? format_double(*r.three_color) : "") << ',' << format_double(r.potts) << ','
      << format_double(r.ingrassia_beta1) << ',' << format_double(r.ingrassia_lambda_min) << ','
      << format_double(r.theta) << ',' << format_double(r.crossover_n) << ','
      << (r.absolute_value_gate ? "true" : "false") << ',' << format_double(r.kappa_closed_form) << ','
      << (r.kappa_exact ? format_double(*r.kappa_exact) : "") << ','
      << format_double(r.exact.beta1) << ',' << format_double(r.exact.beta_min) << ','
      << format_double(r.exact.beta_star) << ',' << (r.all_pass() ? "true" : "false");
  return row.str();
}

void write_csv(std::ostream& out, const TvCurve& c) {
  out << "k,exact_tv,envelope,mc_tv,seed\n";
  for (std::size_t i = 0; i < c.ks.size(); ++i) {
    out << c.ks[i] << ',' << format_double(c.exact_tv[i]) << ',' << format_double(c.envelope[i])
        << ',' << (c.mc_tv ? format_double((*c.mc_tv)[i]) : "") << ',' << c.seed << '\n';
  }
}

}  // namespace spectral_gibbs
