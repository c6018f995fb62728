/* C interface to the Hausdorff moment-space library.
 *
 * All functions return hm_status; outputs are written through pointers.
 * Measures are opaque handles owned by the library. A human-readable
 * message for the most recent error on the calling thread is available
 * via hm_last_error_message().
 */
#ifndef HAUSMOMENT_H
#define HAUSMOMENT_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  HM_OK = 0,
  HM_ERR_DOMAIN = 1,
  HM_ERR_NOT_INTERIOR = 2,
  HM_ERR_CONVERGENCE = 3,
  HM_ERR_DIMENSION = 4,
  HM_ERR_NODE_COLLISION = 5,
  HM_ERR_BOUNDARY = 6,
  HM_ERR_SOLVER_BUDGET = 7,
  HM_ERR_UNKNOWN = 99
} hm_status;

const char* hm_last_error_message(void);

/* ---- discrete measures (opaque) ---- */

typedef struct hm_measure hm_measure;

hm_status hm_measure_create(const double* nodes, const double* weights, int count,
                            hm_measure** out);
void hm_measure_destroy(hm_measure* mu);
int hm_measure_size(const hm_measure* mu);
hm_status hm_measure_get(const hm_measure* mu, double* nodes, double* weights);

/* ---- moment space ---- */

hm_status hm_moments_of(const hm_measure* mu, int n, double* q);
hm_status hm_to_canonical(const double* q, int n, double* p);
hm_status hm_from_canonical(const double* p, int n, double* q);
/* classification: 0 interior, 1 boundary, 2 outside */
hm_status hm_classify(const double* q, int n, double eta, int* out);
hm_status hm_volume(int n, double* out);
hm_status hm_log_volume(int n, double* out);
/* q receives count*n values, draw-major */
hm_status hm_sample_uniform(int n, long long count, unsigned long long seed,
                            double* q);
hm_status hm_incomplete_beta_tail(int n, double delta, double* out);
/* fraction of uniform cube draws inside the body, with binomial stderr */
hm_status hm_volume_mc_membership(int n, long long samples,
                                  unsigned long long seed, double* value,
                                  double* stderr_est);
hm_status hm_krein_index(const hm_measure* mu, double* out);

/* ---- representations ---- */

/* side: 0 lower, 1 upper */
hm_status hm_principal_representation(const double* q, int n, int side,
                                      hm_measure** out);
/* flavor out: 0 principal-lower, 1 principal-upper, 2 canonical-lower,
 * 3 canonical-upper */
hm_status hm_canonical_representation(const double* q, int n, double tstar,
                                      hm_measure** out, double* star_weight,
                                      int* flavor);
hm_status hm_maximal_mass(const double* q, int n, double tstar, double* out);

/* ---- jacobians / volumes ---- */

/* kind: 0 Pol, 1 Pou, 2 Pel, 3 Peu, 4 Col, 5 Cou, 6 Cel, 7 Ceu */
hm_status hm_jacobian_closed_form(int kind, int m, const double* t, int t_len,
                                  double tstar, double* out);
hm_status hm_node_dimension(int kind, int m, int* out);
/* method: 0 quadrature, 1 Monte Carlo */
hm_status hm_volume_by_cov(int kind, int m, int method, int quad_order,
                           long long mc_samples, unsigned long long seed,
                           double* value, double* stderr_est);
hm_status hm_canonical_volume_identity(int n, double tstar, int method,
                                       int quad_order, long long mc_samples,
                                       unsigned long long seed, double* value,
                                       double* stderr_est);
hm_status hm_mean_moment(int n, int i, double tstar, int quad_order, double* out);

/* ---- Selberg integrals ---- */

hm_status hm_selberg_closed(int n, double alpha, double beta, double gamma,
                            double* out);
/* weight: 0 none, 1 sum of reciprocals */
hm_status hm_selberg_numeric(int n, double alpha, double beta, double gamma,
                             int weight, int method, int quad_order,
                             long long mc_samples, unsigned long long seed,
                             double* value, double* stderr_est);

/* ---- kernels ---- */

hm_status hm_cd_kernel(int m, double r1, double r2, double* out);
hm_status hm_kernel_h_hat(int m, double tstar, double s, int quad_order,
                          double* out);
hm_status hm_kernel_g_hat(int m, double tstar, double s, int quad_order,
                          double* out);

/* Self-check helpers; each writes the largest residual observed.
 * legendre: orthogonality tables for P_k and Q_k, k <= kmax (kmax <= 20).
 * reproduce: kernel applied to the Q basis at tstar, odd and even variants.
 * biorth: diagonal vs closed form and off-diagonal magnitude (m >= 2).
 * cd: Christoffel-Darboux kernel vs its Q-expansion on a grid. */
hm_status hm_rkhs_check_legendre(int kmax, double* max_residual);
hm_status hm_rkhs_check_reproduce(int m, double tstar, double* max_residual);
hm_status hm_rkhs_check_biorth(int m, int quad_order, double* max_diag_residual,
                               double* max_offdiag);
hm_status hm_rkhs_check_cd(int m, double* max_residual);
/* single biorthogonality entry B_{jk} and its closed-form target */
hm_status hm_rkhs_biorth_pair(int m, int j, int k, int quad_order, double* value,
                              double* expected);

/* ---- brittleness experiment ---- */

hm_status hm_bound_closed_form(int n, double delta, double* out);
hm_status hm_solve_delta(int n, double delta_prime, double* out);

typedef struct {
  double delta;
  double bound;
  double estimate;
  double stderr_est;
  double prior_estimate;
  double prior_stderr;
  double rate_mass_sup;
  double rate_mass_inf;
  double rate_first_moment;
  long long samples;
  long long failures;
  int certified;
} hm_brittleness_report;

hm_status hm_brittleness_certificate(int n, double delta_prime, long long samples,
                                     unsigned long long seed, int threads,
                                     hm_brittleness_report* out);

#ifdef __cplusplus
}
#endif

#endif /* HAUSMOMENT_H */
