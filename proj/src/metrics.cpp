#include "neqrx/metrics.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace neqrx {

namespace {

void check_dims(const GrayImage& a, const GrayImage& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("image dimension mismatch");
}

}  // namespace

double correlation_coefficient(const GrayImage& a, const GrayImage& b) {
  check_dims(a, b);
  const std::size_t count = a.pixel_count();
  double am = 0.0, bm = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    am += a[i];
    bm += b[i];
  }
  am /= double(count);
  bm /= double(count);
  double num = 0.0, da = 0.0, db = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double xa = a[i] - am, xb = b[i] - bm;
    num += xa * xb;
    da += xa * xa;
    db += xb * xb;
  }
  if (da == 0.0 || db == 0.0)
    throw std::invalid_argument("correlation undefined for constant image");
  return num / std::sqrt(da * db);
}

double npcr(const GrayImage& c1, const GrayImage& c2, bool count_matches) {
  check_dims(c1, c2);
  std::size_t differing = 0;
  for (std::size_t i = 0; i < c1.pixel_count(); ++i)
    if (c1[i] != c2[i]) ++differing;
  const std::size_t hits =
      count_matches ? c1.pixel_count() - differing : differing;
  return 100.0 * double(hits) / double(c1.pixel_count());
}

double uaci(const GrayImage& c1, const GrayImage& c2) {
  check_dims(c1, c2);
  double sum = 0.0;
  for (std::size_t i = 0; i < c1.pixel_count(); ++i)
    sum += std::abs(int(c1[i]) - int(c2[i]));
  return 100.0 * sum / (255.0 * double(c1.pixel_count()));
}

double psnr_from_mse(double mse, double max_i) {
  if (mse <= 0.0) throw std::invalid_argument("PSNR undefined for MSE <= 0");
  return 20.0 * std::log10(max_i / std::sqrt(mse));
}

MsePsnr mse_psnr(const GrayImage& a, const GrayImage& b, double max_i) {
  check_dims(a, b);
  double sq = 0.0, lin = 0.0;
  for (std::size_t i = 0; i < a.pixel_count(); ++i) {
    const double d = double(a[i]) - double(b[i]);
    sq += d * d;
    lin += d;
  }
  const double n = double(a.pixel_count());
  MsePsnr out{sq / n, lin / n, std::nullopt};
  if (out.mse > 0.0) out.psnr = psnr_from_mse(out.mse, max_i);
  return out;
}

GrayImage differential_image(const GrayImage& c1, const GrayImage& c2) {
  check_dims(c1, c2);
  std::vector<std::uint8_t> px(c1.pixel_count());
  for (std::size_t i = 0; i < px.size(); ++i)
    px[i] = std::uint8_t(std::abs(int(c1[i]) - int(c2[i])));
  return GrayImage(c1.order(), std::move(px));
}

MetricReport analyze_pair(const GrayImage& a, const GrayImage& b) {
  return {correlation_coefficient(a, b), npcr(a, b), uaci(a, b),
          mse_psnr(a, b), a.side()};
}

void write_report_csv(const MetricReport& r, std::ostream& out) {
  out << "r,npcr_percent,uaci_percent,mse,mse_signed,psnr_db,side\n";
  out.precision(10);
  out << r.r << ',' << r.npcr_percent << ',' << r.uaci_percent << ','
      << r.error.mse << ',' << r.error.mse_signed << ',';
  if (r.error.psnr)
    out << *r.error.psnr;
  else
    out << "inf";
  out << ',' << r.side << '\n';
}

void write_report_table(const MetricReport& r, std::ostream& out) {
  out.precision(6);
  out << "correlation r      : " << r.r << '\n'
      << "NPCR (%)           : " << r.npcr_percent << '\n'
      << "UACI (%)           : " << r.uaci_percent << '\n'
      << "MSE                : " << r.error.mse << '\n'
      << "MSE (signed mean)  : " << r.error.mse_signed << '\n'
      << "PSNR (dB)          : ";
  if (r.error.psnr)
    out << *r.error.psnr << '\n';
  else
    out << "undefined (identical images)\n";
}

}  // namespace neqrx
