#include "latinpat/sweep.hpp"

#include "latinpat/analysis.hpp"
#include "latinpat/error.hpp"
#include "latinpat/generators.hpp"
#include "latinpat/random.hpp"

#include <cstdio>
#include <ostream>

namespace latinpat {

std::vector<SweepRow> sweep(const SweepConfig& config) {
  if (config.method != "exact" && config.method != "mc") {
    throw Error(Errc::InvalidArgument, "sweep method must be exact or mc");
  }
  std::vector<SweepRow> rows;
  for (const auto& kind : config.kinds) {
    for (int order : config.orders) {
      for (auto seed : config.seeds) {
        const LatinSquare square = generate_square(kind, order, seed);
        const CertReport report =
            config.method == "exact"
                ? certify(exact_profile(square, kCertRows, kCertCols, config.threads), Rational(0))
                : certify(mc_profile(square, kCertRows, kCertCols, config.samples, derive_seed(seed, "mc"),
                                     config.threads),
                          Rational(0));
        const auto add = [&](const char* stat, std::optional<PatternId> id, const Rational& value) {
          rows.push_back({kind, order, seed, stat, id, value});
        };
        add("max_dev", std::nullopt, report.max_dev);
        add("l1_dev", std::nullopt, report.l1_dev);
        add("corner", std::nullopt, report.corner);
        add("tie_fraction", std::nullopt, report.tie_fraction);
        for (auto id : config.targets) {
          if (id.value >= kCertPatterns) throw Error(Errc::IdOutOfRange, "target id out of range");
          add("density", id, report.densities[id.value]);
        }
      }
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12g", r.value.to_double());
    out << r.kind << ',' << r.order << ',' << r.seed << ',' << r.stat << ',';
    if (r.pattern) out << r.pattern->value;
    out << ',' << r.value.numerator().get_str() << ',' << r.value.denominator().get_str() << ',' << buf << '\n';
  }
}

}  // namespace latinpat
