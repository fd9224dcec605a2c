#include "dlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace dlab::fft {

namespace {

// Plans are created once per (n, sign) with FFTW_ESTIMATE (deterministic
// algorithm choice) and executed through the new-array interface. FFTW
// planning is not thread-safe; execution is.
class PlanCache {
  public:
    static fftw_plan get(int n, int sign) {
        static PlanCache cache;
        std::lock_guard<std::mutex> lock(cache.mutex_);
        auto key = std::make_pair(n, sign);
        auto it = cache.plans_.find(key);
        if (it != cache.plans_.end()) return it->second;
        fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
        fftw_plan p = fftw_plan_dft_2d(n, n, buf, buf, sign, FFTW_ESTIMATE);
        fftw_free(buf);
        cache.plans_[key] = p;
        return p;
    }

  private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

struct FftwBuffer {
    explicit FftwBuffer(std::size_t count)
        : data(fftw_alloc_complex(count)) {}
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    fftw_complex* data;
};

void execute(const GridSpec& grid, int sign, std::complex<double>* inout) {
    fftw_plan plan = PlanCache::get(grid.n, sign);
    FftwBuffer buf(grid.size());
    auto* b = reinterpret_cast<std::complex<double>*>(buf.data);
    for (std::size_t m = 0; m < grid.size(); ++m) b[m] = inout[m];
    fftw_execute_dft(plan, buf.data, buf.data);
    for (std::size_t m = 0; m < grid.size(); ++m) inout[m] = b[m];
}

// (-1)^(k1+k2) phase from the -pi grid origin.
inline double origin_phase(const GridSpec& grid, int i1, int i2) {
    return ((grid.wavenumber(i1) + grid.wavenumber(i2)) & 1) ? -1.0 : 1.0;
}

}  // namespace

void forward(const GridSpec& grid, const double* phys, std::complex<double>* spec) {
    for (std::size_t m = 0; m < grid.size(); ++m) spec[m] = phys[m];
    execute(grid, FFTW_FORWARD, spec);
    const double norm = 1.0 / (static_cast<double>(grid.n) * grid.n);
    for (int i1 = 0; i1 < grid.n; ++i1)
        for (int i2 = 0; i2 < grid.n; ++i2) {
            std::size_t m = grid.index(i1, i2);
            spec[m] *= norm * origin_phase(grid, i1, i2);
        }
}

void inverse(const GridSpec& grid, const std::complex<double>* spec, double* phys) {
    std::vector<std::complex<double>> tmp(grid.size());
    for (int i1 = 0; i1 < grid.n; ++i1)
        for (int i2 = 0; i2 < grid.n; ++i2) {
            std::size_t m = grid.index(i1, i2);
            tmp[m] = spec[m] * origin_phase(grid, i1, i2);
        }
    execute(grid, FFTW_BACKWARD, tmp.data());
    for (std::size_t m = 0; m < grid.size(); ++m) phys[m] = tmp[m].real();
}

void raw_forward(const GridSpec& grid, const std::complex<double>* in, std::complex<double>* out) {
    for (std::size_t m = 0; m < grid.size(); ++m) out[m] = in[m];
    execute(grid, FFTW_FORWARD, out);
}

void raw_inverse(const GridSpec& grid, const std::complex<double>* in, std::complex<double>* out) {
    for (std::size_t m = 0; m < grid.size(); ++m) out[m] = in[m];
    execute(grid, FFTW_BACKWARD, out);
}

std::vector<double> circular_convolution(const GridSpec& grid,
                                         const std::vector<double>& a,
                                         const std::vector<double>& b) {
    std::vector<std::complex<double>> fa(grid.size()), fb(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m) {
        fa[m] = a[m];
        fb[m] = b[m];
    }
    execute(grid, FFTW_FORWARD, fa.data());
    execute(grid, FFTW_FORWARD, fb.data());
    for (std::size_t m = 0; m < grid.size(); ++m) fa[m] *= fb[m];
    execute(grid, FFTW_BACKWARD, fa.data());
    const double norm = 1.0 / (static_cast<double>(grid.n) * grid.n);
    std::vector<double> out(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m) out[m] = fa[m].real() * norm;
    return out;
}

}  // namespace dlab::fft
