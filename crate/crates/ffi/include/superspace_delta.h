#ifndef SUPERSPACE_DELTA_H
#define SUPERSPACE_DELTA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SsdStatus {
  SSD_STATUS_OK = 0,
  SSD_STATUS_NULL_POINTER = 1,
  SSD_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Parameters outside the model's domain, e.g. `M > 1`.
   */
  SSD_STATUS_DOMAIN_ERROR = 3,
  SSD_STATUS_NUMERICAL_FAILURE = 4,
  SSD_STATUS_OUT_OF_RANGE = 5,
  SSD_STATUS_PANIC = 6,
} SsdStatus;

/**
 * Spectrum of the `m = 0` Hamiltonian.
 */
typedef struct SsdSpectrum SsdSpectrum;

/**
 * Bound state on `R^{1|2n}`.
 */
typedef struct SsdWaveFunction SsdWaveFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *ssd_version(void);

/**
 * Message for the most recent failure on this thread, or NULL. Valid
 * until the next call into the library from the same thread.
 */
const char *ssd_last_error(void);

/**
 * Bound-state energy on `R^{m|2n}` with coupling `a`.
 *
 * # Safety
 * `out_energy` must be valid for writes.
 */
enum SsdStatus ssd_energy(uint32_t m, uint32_t n, double a, double *out_energy);

/**
 * Bound-state energy for a real super-dimension `M <= 1`.
 *
 * # Safety
 * `out_energy` must be valid for writes.
 */
enum SsdStatus ssd_energy_for_dimension(double super_dimension, double a, double *out_energy);

/**
 * `E(M, 1) / M` for `M <= -10`.
 *
 * # Safety
 * `out_ratio` must be valid for writes.
 */
enum SsdStatus ssd_asymptotic_ratio(double super_dimension, double *out_ratio);

/**
 * Builds the `m = 1` bound state, optionally scaled to unit norm.
 *
 * # Safety
 * `out_handle` must be valid for writes. The handle must be released with
 * [`ssd_wavefunction_free`].
 */
enum SsdStatus ssd_wavefunction_new(uint32_t n,
                                    double a,
                                    bool normalized,
                                    struct SsdWaveFunction **out_handle);

/**
 * # Safety
 * `handle` must come from [`ssd_wavefunction_new`] and not be used
 * afterwards. NULL is ignored.
 */
void ssd_wavefunction_free(struct SsdWaveFunction *handle);

/**
 * Number of fermion pairs `n`.
 *
 * # Safety
 * `handle` must be a live wave-function handle; `out` valid for writes.
 */
enum SsdStatus ssd_wavefunction_n_pairs(const struct SsdWaveFunction *handle, uint32_t *out);

/**
 * Energy `E` and decay rate `b = √(2|E|)`.
 *
 * # Safety
 * `handle` must be a live wave-function handle; outputs valid for writes.
 */
enum SsdStatus ssd_wavefunction_energy(const struct SsdWaveFunction *handle,
                                       double *out_energy,
                                       double *out_decay);

/**
 * Coefficient of `|x|^p e^{-b|x|}` in the component multiplying
 * `X̂^{2n-2k}`.
 *
 * # Safety
 * `handle` must be a live wave-function handle; `out` valid for writes.
 */
enum SsdStatus ssd_wavefunction_coefficient(const struct SsdWaveFunction *handle,
                                            uint32_t k,
                                            uint32_t p,
                                            double *out);

/**
 * Body of the wave function at `x`.
 *
 * # Safety
 * `handle` must be a live wave-function handle; `out` valid for writes.
 */
enum SsdStatus ssd_wavefunction_body_at(const struct SsdWaveFunction *handle,
                                        double x,
                                        double *out);

/**
 * Whether the Schrödinger residual, jump condition and lower delta
 * cancellation all pass.
 *
 * # Safety
 * `handle` must be a live wave-function handle; `out` valid for writes.
 */
enum SsdStatus ssd_wavefunction_validated(const struct SsdWaveFunction *handle, bool *out);

/**
 * Builds and diagonalizes the fermionic Hamiltonian, `1 <= n <= 6`.
 *
 * # Safety
 * `out_handle` must be valid for writes. Release with
 * [`ssd_spectrum_free`].
 */
enum SsdStatus ssd_spectrum_new(uint32_t n, double a, struct SsdSpectrum **out_handle);

/**
 * # Safety
 * `handle` must come from [`ssd_spectrum_new`] and not be used afterwards.
 * NULL is ignored.
 */
void ssd_spectrum_free(struct SsdSpectrum *handle);

/**
 * Number of distinct eigenvalues (clusters).
 *
 * # Safety
 * `handle` must be a live spectrum handle; `out` valid for writes.
 */
enum SsdStatus ssd_spectrum_len(const struct SsdSpectrum *handle, size_t *out);

/**
 * Eigenvalue `index` with its algebraic multiplicity, ordered by real
 * then imaginary part.
 *
 * # Safety
 * `handle` must be a live spectrum handle; outputs valid for writes.
 */
enum SsdStatus ssd_spectrum_eigenvalue(const struct SsdSpectrum *handle,
                                       size_t index,
                                       double *out_re,
                                       double *out_im,
                                       size_t *out_multiplicity);

/**
 * Geometric and algebraic multiplicity of the eigenvalue 0.
 *
 * # Safety
 * `handle` must be a live spectrum handle; outputs valid for writes.
 */
enum SsdStatus ssd_spectrum_zero_multiplicity(const struct SsdSpectrum *handle,
                                              size_t *out_geometric,
                                              size_t *out_algebraic);

/**
 * The level `−(a n!(2π)^n)^{1/(n+1)}` and whether it was found.
 *
 * # Safety
 * `handle` must be a live spectrum handle; outputs valid for writes.
 */
enum SsdStatus ssd_spectrum_predicted_level(const struct SsdSpectrum *handle,
                                            double *out_level,
                                            bool *out_found);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPERSPACE_DELTA_H */
