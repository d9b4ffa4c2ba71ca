#ifndef SWT_H
#define SWT_H

/* C interface to the steerable wavelet frame toolkit: tight multiscale frames
 * built from dyadic radial bands and admissible angular multiplier banks on
 * spherical designs, with exact analysis/synthesis, zonal kernel design, and
 * coefficient-space steering under rotations.
 *
 * Conventions
 *   - Constructors hand back opaque handles released with the matching
 *     *_free function; freeing NULL is a no-op.
 *   - Functions return SWT_OK on success. On failure the out-parameters are
 *     untouched and swt_last_error() carries a message (thread-local, valid
 *     until the next failing call on the same thread).
 *   - Complex coefficient data crosses the boundary as interleaved re/im
 *     doubles; capacities are counted in doubles.
 *   - SWT_THREADS caps internal parallelism (0 or unset = one worker per
 *     hardware thread).
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum swt_status {
    SWT_OK = 0,
    SWT_ERR_ARGUMENT = 1,    /* bad parameter, domain violation, shape mismatch */
    SWT_ERR_UNSUPPORTED = 2, /* valid request outside the implemented surface */
    SWT_ERR_IO = 3,          /* file missing, parse failure, malformed container */
    SWT_ERR_VERIFY = 4,      /* a mathematical verification failed */
    SWT_ERR_NUMERIC = 5,     /* tolerance or iteration cap not reached */
    SWT_ERR_INTERNAL = 6     /* invariant broken inside the library */
} swt_status;

const char* swt_version(void);
const char* swt_status_name(swt_status status);
const char* swt_last_error(void);

/* ---- spherical designs ------------------------------------------------- */
/* Equal-weight quadrature point sets on S^{d-1} with a verified strength t. */

typedef struct swt_design swt_design;

/* "equiangular(n)" (d=2, strength n-1), "icosahedron", "dodecahedron",
 * "octahedron", "cube". */
swt_status swt_design_builtin(const char* name, swt_design** out);
/* Plain-text file of n x d unit points; claimed strength is verified before
 * the design is returned. */
swt_status swt_design_load(const char* path, int d, int strength, swt_design** out);
swt_status swt_design_save(const swt_design* design, const char* path);
int swt_design_dim(const swt_design* design);
int swt_design_strength(const swt_design* design);
int swt_design_size(const swt_design* design); /* number of points */
/* Copies the n*d row-major point coordinates; capacity in doubles. */
swt_status swt_design_points(const swt_design* design, double* out, int64_t capacity);
/* Quadrature residuals for degrees 1..t. residuals (length t) may be NULL;
 * worst and pass may be NULL. Returns SWT_OK whether or not the design
 * passes; the outcome is in *pass. */
swt_status swt_design_verify(const swt_design* design, int t, double* residuals, double* worst,
                             int* pass);
void swt_design_free(swt_design* design);

/* ---- angular multiplier banks ------------------------------------------ */
/* A bank is an admissible multiplier collection: degree-0-homogeneous channel
 * functions whose squared moduli sum to 1 on the sphere. */

typedef struct swt_bank swt_bank;

/* Per-degree weights w_l = a(l/(lmax+1)) of a named window shape ("cubic",
 * "bspline1", "bspline3", "flat"), normalized to a unit vector; out has
 * lmax+1 entries. */
swt_status swt_window_coeffs(const char* window, int lmax, int d, double* out);
/* Unit weight vector minimizing (maximize=0) or maximizing the localization
 * energy for the named weight function ("arccos2" = squared geodesic angle);
 * out has lmax+1 entries. */
swt_status swt_optimal_window(int d, int lmax, const char* weight, int maximize, double* out);

/* Zonal bank: one channel per design point, m_n(w) = Lambda(point_n . w).
 * Requires design strength >= 2*lmax. The window string accepts the named
 * shapes plus "optimal" / "optimal:arccos2". */
swt_status swt_bank_zonal(const swt_design* design, int lmax, const char* window, swt_bank** out);
/* Same construction from explicit per-degree weights (length lmax+1). */
swt_status swt_bank_zonal_custom(const swt_design* design, int lmax, const double* weights,
                                 swt_bank** out);
/* Harmonic bank: one channel per spherical harmonic of degree <= lmax with a
 * nonzero weight; d = 2 or 3. */
swt_status swt_bank_harmonic(int d, int lmax, const char* window, swt_bank** out);
swt_status swt_bank_harmonic_custom(int d, int lmax, const double* weights, swt_bank** out);

int swt_bank_channels(const swt_bank* bank);
int swt_bank_dim(const swt_bank* bank);
int swt_bank_lmax(const swt_bank* bank);
/* The realized unit per-degree weights (length lmax+1). */
swt_status swt_bank_weights(const swt_bank* bank, double* out);
/* All channel values at direction w (any nonzero d-vector). */
swt_status swt_bank_eval(const swt_bank* bank, const double* w, double* out);
/* max over `samples` quasi-uniform sphere points of |sum_n m_n^2 - 1|. */
swt_status swt_bank_partition_residual(const swt_bank* bank, int samples, double* worst);
void swt_bank_free(swt_bank* bank);

/* Unit-weight zonal kernel profile Lambda(cos theta) for `count` angles. */
swt_status swt_kernel_profile(int d, int lmax, int nmax, const double* weights,
                              const double* theta, int64_t count, double* out);
/* Equal-degree-weight steering kernel sum_l (N(d,l)/nmax) P_l(d; cos theta);
 * at theta = 0 it equals N(d+1,lmax)/nmax. */
swt_status swt_steering_kernel_profile(int d, int lmax, int nmax, const double* theta,
                                       int64_t count, double* out);

/* ---- frames and pyramids ----------------------------------------------- */

typedef struct swt_frame swt_frame;
typedef struct swt_pyramid swt_pyramid;

/* Multiscale frame on a periodic grid: `scales` dyadic radial bands of kind
 * "simoncelli-logcos" or "meyer-smooth", the bank's channels on every band,
 * and a lowpass completion. Every side of shape (d entries) must be at least
 * 2^scales * 4. */
swt_status swt_frame_build(const int* shape, int d, int scales, const char* radial,
                           const swt_bank* bank, swt_frame** out);
int swt_frame_dim(const swt_frame* frame);
int swt_frame_scales(const swt_frame* frame);
int swt_frame_channels(const swt_frame* frame);
int64_t swt_frame_value_count(const swt_frame* frame); /* grid points */
/* Identifying string (bank, design, radial kind, scales, grid); pyramids
 * carry a copy so mismatched synthesis is rejected. Valid until free. */
const char* swt_frame_signature(const swt_frame* frame);
void swt_frame_free(swt_frame* frame);

/* Forward transform of a real signal (row-major, value_count doubles). The
 * pyramid holds one complex array per (scale, channel) plus the lowpass; for
 * an admissible bank the total energy equals the signal energy. */
swt_status swt_analyze(const swt_frame* frame, const double* signal, int64_t count,
                       swt_pyramid** out);
/* Adjoint reconstruction into `out` (capacity in doubles); exact inverse of
 * swt_analyze up to DFT rounding. */
swt_status swt_synthesize(const swt_pyramid* pyramid, const swt_frame* frame, double* out,
                          int64_t capacity);

int swt_pyramid_dim(const swt_pyramid* pyramid);
swt_status swt_pyramid_shape(const swt_pyramid* pyramid, int* out);
int swt_pyramid_scales(const swt_pyramid* pyramid);
int swt_pyramid_channels(const swt_pyramid* pyramid);
double swt_pyramid_energy(const swt_pyramid* pyramid);
const char* swt_pyramid_signature(const swt_pyramid* pyramid);
/* Copies one coefficient array as interleaved re/im (2 * grid points
 * doubles); scale 0 is the finest. */
swt_status swt_pyramid_band(const swt_pyramid* pyramid, int scale, int channel, double* out,
                            int64_t capacity);
swt_status swt_pyramid_lowpass(const swt_pyramid* pyramid, double* out, int64_t capacity);
void swt_pyramid_free(swt_pyramid* pyramid);

/* Container directory: manifest.json + one tensor file per coefficient array
 * (+ the design for zonal banks, checksummed). Loading re-verifies design
 * strength, checksum, and stored energy; save/load round trips are
 * byte-exact. */
swt_status swt_pyramid_save(const swt_pyramid* pyramid, const swt_frame* frame, const char* dir);
/* frame_out may be NULL when only the coefficients are needed; when present
 * the frame is rebuilt from the manifest and its signature re-checked. */
swt_status swt_pyramid_load(const char* dir, swt_pyramid** out, swt_frame** frame_out);

/* ---- steering ----------------------------------------------------------- */

/* Rotates a pyramid in coefficient space. rotation: "angle=<radians>" (d=2),
 * "axis=x,y,z;angle=<radians>" (d=3), or d*d comma-separated row-major
 * matrix entries. mode "zonal" needs the frame's bank to be zonal with flat
 * weights; mode "harmonic" needs a harmonic bank (exact per-degree blocks).
 * The lowpass array is untouched. */
swt_status swt_steer(const swt_pyramid* pyramid, const swt_frame* frame, const char* rotation,
                     const char* mode, swt_pyramid** out);

/* ---- tensor files ------------------------------------------------------- */
/* Single-line JSON header {"magic":"SWT1","dtype":...,"shape":[...]} followed
 * by row-major little-endian payload; dtype "f64" or "c128". */

typedef struct swt_tensor swt_tensor;

swt_status swt_tensor_read(const char* path, swt_tensor** out);
/* data: count doubles for "f64", 2*count interleaved for "c128". */
swt_status swt_tensor_write(const char* path, const char* dtype, const int* shape, int d,
                            const double* data);
int swt_tensor_dim(const swt_tensor* tensor);
swt_status swt_tensor_shape(const swt_tensor* tensor, int* out);
const char* swt_tensor_dtype(const swt_tensor* tensor);
int64_t swt_tensor_count(const swt_tensor* tensor); /* elements, not doubles */
/* Borrowed pointer into the handle; interleaved re/im for "c128". */
const double* swt_tensor_data(const swt_tensor* tensor);
void swt_tensor_free(swt_tensor* tensor);

/* Locale-proof CSV: header line, then rows of shortest-round-trip doubles,
 * '.' decimal separator, LF endings. values is row-major rows x cols. */
swt_status swt_write_csv(const char* path, const char* header, const double* values, int64_t rows,
                         int cols);

/* ---- self-verification --------------------------------------------------- */

/* Called once per criterion as it completes; pass is 0/1. */
typedef void (*swt_selftest_cb)(void* user, int index, const char* name, double measured,
                                double tolerance, int pass, double seconds, const char* note);
/* Runs the full acceptance suite (partition of unity, tightness, perfect
 * reconstruction, design verification, isometry, steering exactness, kernel
 * profiles, optimizer, radial telescoping, spatial cross-check). failures
 * receives the number of failed criteria; cb and user may be NULL. */
swt_status swt_selftest(swt_selftest_cb cb, void* user, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* SWT_H */
