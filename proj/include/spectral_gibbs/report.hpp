#pragma once

// Machine-readable output. Sites are written 1-based and colors as letters
// (a = c^(1), b = c^(2), ...); ranks stay 0-based.

#include <ostream>
#include <string>

#include "spectral_gibbs/bounds.hpp"
#include "spectral_gibbs/chain.hpp"
#include "spectral_gibbs/json_writer.hpp"

namespace spectral_gibbs {

std::string color_label(Color c);

void write_json(JsonWriter& json, const BoundReport& report);
void write_json(JsonWriter& json, const Spectrum& spectrum);
void write_json(JsonWriter& json, const KappaResult& kappa, const ModelSpec& spec);
void write_json(JsonWriter& json, const TvCurve& curve, const ModelSpec& spec);

std::string bound_report_csv_header();
std::string bound_report_csv_row(const BoundReport& report);

/// k,exact_tv,envelope,mc_tv,seed with a header row; mc_tv empty without the
/// Monte Carlo arm.
void write_csv(std::ostream& out, const TvCurve& curve);

}  // namespace spectral_gibbs
