#pragma once

#include <iosfwd>
#include <optional>

#include "neqrx/image.hpp"

namespace neqrx {

// Pearson correlation over pixel intensities; throws on constant images.
double correlation_coefficient(const GrayImage& a, const GrayImage& b);

// Percent of positions where the two ciphertexts differ. `count_matches`
// counts matching positions instead (an alternative convention, inverted
// relative to the reported values).
double npcr(const GrayImage& c1, const GrayImage& c2,
            bool count_matches = false);

// 100 * mean(|c1 - c2|) / 255.
double uaci(const GrayImage& c1, const GrayImage& c2);

struct MsePsnr {
  double mse;                 // mean of squared differences
  double mse_signed;   // mean of signed differences (no square)
  std::optional<double> psnr; // dB from the squared MSE; empty when MSE == 0
};

MsePsnr mse_psnr(const GrayImage& a, const GrayImage& b, double max_i = 255.0);

double psnr_from_mse(double mse, double max_i = 255.0);

GrayImage differential_image(const GrayImage& c1, const GrayImage& c2);

struct MetricReport {
  double r;
  double npcr_percent;
  double uaci_percent;
  MsePsnr error;
  std::size_t side;
};

MetricReport analyze_pair(const GrayImage& a, const GrayImage& b);
void write_report_csv(const MetricReport& r, std::ostream& out);
void write_report_table(const MetricReport& r, std::ostream& out);

}  // namespace neqrx
