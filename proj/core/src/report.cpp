#include "dstbc/report.hpp"

#include <cmath>
#include <cstdio>
#include "json.hpp"
#include <ostream>

namespace dstbc {

namespace {

using nlohmann::json;

json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? json("nan") : json(v > 0 ? "inf" : "-inf");
}

json record_json(const BerRecord& r) {
  return json{{"snr_db", r.snr_db},
              {"modulation", r.modulation},
              {"channel", r.channel},
              {"doppler_hz", r.doppler_hz},
              {"iqi", r.iqi},
              {"irr_db", number(r.irr_db)},
              {"detection", r.detection},
              {"compensation", r.compensation},
              {"bit_errors", r.bit_errors},
              {"bits", r.bits},
              {"ber", r.ber},
              {"block_pairs", r.block_pairs},
              {"gamma_re", r.gamma.real()},
              {"gamma_im", r.gamma.imag()},
              {"seed", r.seed},
              {"elapsed_s", r.elapsed_s}};
}

void write_record_fields(std::ostream& os, const BerRecord& r) {
  os << format_number(r.snr_db) << ',' << r.modulation << ',' << r.channel << ',' << format_number(r.doppler_hz)
     << ',' << r.iqi << ',' << format_number(r.irr_db) << ',' << r.detection << ',' << r.compensation << ','
     << r.bit_errors << ',' << r.bits << ',' << format_number(r.ber) << ',' << r.block_pairs << ','
     << format_number(r.gamma.real()) << ',' << format_number(r.gamma.imag()) << ',' << r.seed;
}

constexpr const char* kRecordHeader =
    "snr_db,modulation,channel,doppler_hz,iqi,irr_db,detection,compensation,bit_errors,bits,ber,block_pairs,"
    "gamma_re,gamma_im,seed";

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
  return buf;
}

void write_ber_csv(std::ostream& os, std::span<const BerRecord> records) {
  os << kRecordHeader << '\n';
  for (const auto& r : records) {
    write_record_fields(os, r);
    os << '\n';
  }
}

void write_ber_json(std::ostream& os, std::span<const BerRecord> records) {
  json arr = json::array();
  for (const auto& r : records) arr.push_back(record_json(r));
  os << json{{"records", arr}}.dump(2) << '\n';
}

void write_analytic_csv(std::ostream& os, std::span<const analysis::AnalyticPoint> points) {
  os << "snr_db,irr_db,modulation,sinr_eq_db,sinr_asymptotic_db,ber_closed_form,ber_floor\n";
  for (const auto& p : points) {
    os << format_number(p.snr_db) << ',' << format_number(p.irr_db) << ',' << modulation_name(p.order) << ","
       << format_number(analysis::linear_to_db(p.snr_eq)) << ',' << format_number(p.irr_db) << ','
       << format_number(p.ber) << ','
       << format_number(p.ber_floor) << '\n';
  }
}

void write_analytic_json(std::ostream& os, std::span<const analysis::AnalyticPoint> points) {
  json arr = json::array();
  for (const auto& p : points) {
    arr.push_back(json{{"snr_db", p.snr_db},
                       {"irr_db", number(p.irr_db)},
                       {"modulation", modulation_name(p.order)},
                       {"sinr_eq_db", number(analysis::linear_to_db(p.snr_eq))},
                       {"sinr_asymptotic_db", number(p.irr_db)},
                       {"ber_closed_form", p.ber},
                       {"ber_floor", p.ber_floor}});
  }
  os << json{{"points", arr}}.dump(2) << '\n';
}

void write_compare_csv(std::ostream& os, std::span<const ComparePoint> points) {
  os << kRecordHeader << ",ber_analytic,ber_floor,rel_gap\n";
  for (const auto& p : points) {
    write_record_fields(os, p.sim);
    const double gap = p.ber_analytic > 0.0 ? (p.sim.ber - p.ber_analytic) / p.ber_analytic : 0.0;
    os << ',' << format_number(p.ber_analytic) << ',' << format_number(p.ber_floor) << ',' << format_number(gap)
       << '\n';
  }
}

void write_compare_json(std::ostream& os, std::span<const ComparePoint> points) {
  json arr = json::array();
  for (const auto& p : points) {
    auto j = record_json(p.sim);
    j["ber_analytic"] = p.ber_analytic;
    j["ber_floor"] = p.ber_floor;
    j["rel_gap"] = p.ber_analytic > 0.0 ? (p.sim.ber - p.ber_analytic) / p.ber_analytic : 0.0;
    arr.push_back(j);
  }
  os << json{{"points", arr}}.dump(2) << '\n';
}

}  // namespace dstbc
