#pragma once
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "designs.hpp"
#include "frame.hpp"

namespace swt::io {

// Single-tensor interchange file: one line of JSON
//   {"magic":"SWT1","dtype":"f64"|"c128","shape":[n1,...,nd]}
// followed by the row-major little-endian payload (8-byte floats, complex as
// interleaved re/im pairs).  Writing the same data twice produces identical
// bytes.
struct Tensor {
    std::vector<int> shape;
    std::string dtype;  // "f64" | "c128"
    std::vector<double> f64;
    std::vector<std::complex<double>> c128;

    std::int64_t count() const;
};

void write_tensor(const std::string& path, const std::vector<int>& shape, const double* data);
void write_tensor(const std::string& path, const std::vector<int>& shape,
                  const std::complex<double>* data);
Tensor read_tensor(const std::string& path);

// Number formatting used in every text artifact: 17 significant digits,
// locale-independent, round-trips any double exactly.
std::string format_double(double v);

// Header row then one line per data row, comma separated, LF endings.
void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

// Everything needed to rebuild the frame a stored pyramid belongs to.
struct PyramidMeta {
    std::vector<int> shape;
    int J = 0;
    int n_max = 0;
    int d = 0;
    int lmax = 0;
    std::string bank_kind;  // "zonal" | "harmonic"
    std::string window;
    std::vector<double> coeffs;
    std::string radial;
    std::string signature;
    double energy = 0.0;
    designs::SphericalDesign design;  // zonal only; re-verified on load
};

// Pyramid container directory: manifest.json, one c128 tensor per (scale,
// channel) plus lowpass.swt, and for zonal banks the design points as
// design.txt with its checksum pinned in the manifest.
void save_pyramid(const std::string& dir, const frame::Pyramid& pyramid,
                  const frame::SteerableFrame& frame);

// Loads and validates a container: all files present and well-formed, design
// checksum intact, stored energy matching the recomputed energy to 1e-9.
frame::Pyramid load_pyramid(const std::string& dir, PyramidMeta& meta);

// Rebuilds the originating frame (bank, radial windows, grid) from metadata.
frame::SteerableFrame frame_from_meta(const PyramidMeta& meta);

}  // namespace swt::io
