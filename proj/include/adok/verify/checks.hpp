#pragma once

#include <adok/model/degrees.hpp>
#include <adok/okounkov/estimators.hpp>
#include <adok/verify/certificate.hpp>

namespace adok {

// --- exact counting lemmas --------------------------------------------------

// log# Gamma - log# (Ker r cap 2*Gamma) <= log# r(Gamma)
//                                       <= log# (2*Gamma) - log# (Ker r cap Gamma),
// asserted in exact product form.  `rmap` holds the rows of a surjective
// integer matrix.
Certificate check_counting_lemma(const std::vector<IntVec>& gamma,
                                 const std::vector<IntVec>& rmap);

// 0 <= log#(M cap a Delta) - log#(M cap Delta) <= log(ceil 2a) rk M, exact.
Certificate check_dilation_lemma(const Lattice& M, const ConvexBody& delta, const Rat& a);

struct RandomSuiteConfig {
  unsigned long long seed = 20240901;
  int instances = 500;
  int max_rank = 4;
  int max_points = 200;
};

Certificate check_counting_lemma_random(const RandomSuiteConfig& cfg = {});
Certificate check_dilation_lemma_random(const RandomSuiteConfig& cfg = {});

// --- model-level checks -----------------------------------------------------

Certificate check_yuan_theorem(const DiagonalModel& model, const Face& face,
                               const GoodFlag& flag, int m);

Certificate check_prop_yuan(const DiagonalModel& model, const Face& face, const GoodFlag& flag,
                            const std::vector<int>& ms);

Certificate check_brunn_minkowski(const DiagonalModel& model_l, const DiagonalModel& model_m,
                                  const Face& face, const std::vector<int>& ms);

Certificate check_continuity(const DiagonalModel& model, const Face& face,
                             const std::vector<Rat>& lambdas, const std::vector<int>& ms);

Certificate check_nef_equality(const DiagonalModel& model, const Face& face,
                               const std::vector<int>& ms, double rel_tol = 0.2,
                               bool allow_undetermined = false);

struct FujitaResult {
  Certificate cert;
  double bound = 0;        // (dimY+1)! * LP value
  bool feasible = true;
  double avol_hi = 0;
  double avol_best = 0;
  double gap = 0;
};

FujitaResult fujita_lower_bound(const DiagonalModel& model, const Face& face,
                                const std::vector<int>& ms, int grid_points,
                                const Face* face_z = nullptr);

Certificate check_baselocus_duality(const DiagonalModel& model, int m_max,
                                    double threshold = 0.05);

Certificate check_wample_openness(const DiagonalModel& model, int m_max);

}  // namespace adok
