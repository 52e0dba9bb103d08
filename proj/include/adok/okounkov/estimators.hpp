#pragma once

#include <adok/model/baselocus.hpp>
#include <adok/okounkov/semigroup.hpp>

#include <nlohmann/json_fwd.hpp>

#include <optional>

namespace adok {

struct LevelEstimate {
  int m = 0;
  bool empty = true;
  Interval log_count{0, 0};
  Interval norm_dim{0, 0};    // (dimY+1)!/m^{dimY+1} normalization
  Interval norm_kappa{0, 0};  // (kappa+1)!/m^{kappa+1} normalization
  bool exact = false;
};

struct VolumeReport {
  Face face;
  std::vector<LevelEstimate> levels;
  bool kappa_defined = false;
  int kappa = -1;
  std::optional<int> l0;  // first nonempty level
  Interval avol_raw{0, 0};
  std::optional<double> avol_extrapolated;
  Interval e_hat_raw{0, 0};
  std::optional<double> e_hat_extrapolated;
  double oscillation = 0.0;  // spread of the last three kappa-normalized mids
  std::optional<bool> generates;

  double avol_best() const {
    return avol_extrapolated ? *avol_extrapolated : avol_raw.mid();
  }
  double e_hat_best() const {
    return e_hat_extrapolated ? *e_hat_extrapolated : e_hat_raw.mid();
  }
};

std::vector<int> parse_m_range(const std::string& spec);  // "8..48" or "8,16,32"

VolumeReport volume_estimate(const DiagonalModel& model, const Face& face,
                             const std::vector<int>& ms, bool extrapolate = true,
                             const GoodFlag* flag = nullptr,
                             const CountLimits& limits = {});

// Valuation-count limit against the hull-volume route for the semigroup
// base; both normalized per the sampled kappa.
struct KKOkResult {
  Interval count_route{0, 0};   // #w / m^{kappa+1} at the largest level
  Rat hull_route_volume = 0;    // |base| * |S|-normalization
  double hull_route = 0.0;
  bool image_exact = true;
  int kappa = -1;
  Rat fundamental_volume = 0;
};

KKOkResult kkok_cross_check(const DiagonalModel& model, const Face& face, const GoodFlag& flag,
                            const std::vector<int>& ms);

// Growth constant of the restricted section algebra from monomial counts,
// normalized by m^kappa / kappa!.
double geometric_mult_estimate(const DiagonalModel& model, const Face& face,
                               const std::vector<int>& ms);

nlohmann::ordered_json volume_report_json(const VolumeReport& rep);
std::string volume_report_csv(const VolumeReport& rep);

}  // namespace adok
