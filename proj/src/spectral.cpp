#include "acsplit/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "acsplit/errors.hpp"

namespace acsplit {

namespace {

// FFTW's planner is not thread-safe, execution on fresh arrays is. Plans are
// created once per grid shape and live for the whole process.
struct Plans {
    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;
};

const Plans& plans_for(const Grid& grid) {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, Boundary>, Plans> cache;

    std::lock_guard lock(mutex);
    auto key = std::make_tuple(grid.nx(), grid.ny(), grid.boundary());
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const int n0 = grid.ny();
    const int n1 = grid.nx();
    Plans p;
    double* real = fftw_alloc_real(grid.size());
    if (grid.boundary() == Boundary::Neumann) {
        double* out = fftw_alloc_real(grid.size());
        p.forward = fftw_plan_r2r_2d(n0, n1, real, out, FFTW_REDFT10, FFTW_REDFT10, flags);
        p.inverse = fftw_plan_r2r_2d(n0, n1, out, real, FFTW_REDFT01, FFTW_REDFT01, flags);
        fftw_free(out);
    } else {
        fftw_complex* spec = fftw_alloc_complex(grid.spectral_size());
        p.forward = fftw_plan_dft_r2c_2d(n0, n1, real, spec, flags);
        p.inverse = fftw_plan_dft_c2r_2d(n0, n1, spec, real, flags);
        fftw_free(spec);
    }
    fftw_free(real);
    if (p.forward == nullptr || p.inverse == nullptr) {
        throw Error("FFTW failed to create plans for grid " + std::to_string(n1) + "x" +
                    std::to_string(n0));
    }
    return cache.emplace(key, p).first->second;
}

// 1D DCT-II scaling that turns FFTW's unnormalized output into cosine amplitudes.
double cosine_amplitude_scale(int k) { return k == 0 ? 1.0 : 2.0; }

double int_pow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

SpectralCoeffs::SpectralCoeffs(const Grid& grid) : grid_(grid) {
    if (grid.boundary() == Boundary::Neumann) {
        cosine_.assign(grid.spectral_size(), 0.0);
    } else {
        fourier_.assign(grid.spectral_size(), {0.0, 0.0});
    }
}

void SpectralCoeffs::scale(std::span<const double> factor) {
    if (factor.size() != size()) throw ContractError("SpectralCoeffs::scale: size mismatch");
    if (grid_.boundary() == Boundary::Neumann) {
        for (std::size_t m = 0; m < cosine_.size(); ++m) cosine_[m] *= factor[m];
    } else {
        for (std::size_t m = 0; m < fourier_.size(); ++m) fourier_[m] *= factor[m];
    }
}

SpectralCoeffs forward(const Field& field) {
    const Grid& grid = field.grid();
    const Plans& plans = plans_for(grid);
    SpectralCoeffs out(grid);
    // FFTW takes non-const input pointers; the forward transforms do not write to them.
    auto* in = const_cast<double*>(field.values().data());

    if (grid.boundary() == Boundary::Neumann) {
        auto a = out.cosine();
        fftw_execute_r2r(plans.forward, in, a.data());
        const double norm = 1.0 / (4.0 * grid.nx() * grid.ny());
        for (int l = 0; l < grid.ny(); ++l) {
            for (int k = 0; k < grid.nx(); ++k) {
                a[grid.index(k, l)] *=
                    norm * cosine_amplitude_scale(k) * cosine_amplitude_scale(l);
            }
        }
    } else {
        auto c = out.fourier();
        fftw_execute_dft_r2c(plans.forward, in, reinterpret_cast<fftw_complex*>(c.data()));
        const double norm = 1.0 / static_cast<double>(grid.size());
        for (auto& z : c) z *= norm;
    }
    return out;
}

Field inverse(const SpectralCoeffs& coeffs) {
    const Grid& grid = coeffs.grid();
    const Plans& plans = plans_for(grid);
    Field out(grid);

    if (grid.boundary() == Boundary::Neumann) {
        std::vector<double> work(coeffs.cosine().begin(), coeffs.cosine().end());
        for (int l = 0; l < grid.ny(); ++l) {
            for (int k = 0; k < grid.nx(); ++k) {
                work[grid.index(k, l)] /=
                    cosine_amplitude_scale(k) * cosine_amplitude_scale(l);
            }
        }
        fftw_execute_r2r(plans.inverse, work.data(), out.values().data());
    } else {
        // c2r overwrites its input.
        std::vector<std::complex<double>> work(coeffs.fourier().begin(), coeffs.fourier().end());
        fftw_execute_dft_c2r(plans.inverse, reinterpret_cast<fftw_complex*>(work.data()),
                             out.values().data());
    }
    return out;
}

Wavenumbers wavenumbers(const Grid& grid) {
    Wavenumbers w;
    w.kx.resize(grid.spectral_size());
    w.ky.resize(grid.spectral_size());
    if (grid.boundary() == Boundary::Neumann) {
        for (int l = 0; l < grid.ny(); ++l) {
            for (int k = 0; k < grid.nx(); ++k) {
                w.kx[grid.index(k, l)] = 0.5 * k;
                w.ky[grid.index(k, l)] = 0.5 * l;
            }
        }
    } else {
        const int hn = grid.half_nx();
        for (int l = 0; l < grid.ny(); ++l) {
            const int ly = l < grid.ny() / 2 ? l : l - grid.ny();
            for (int k = 0; k < hn; ++k) {
                const int kx = k < grid.nx() / 2 ? k : k - grid.nx();
                w.kx[static_cast<std::size_t>(l) * hn + k] = kx;
                w.ky[static_cast<std::size_t>(l) * hn + k] = ly;
            }
        }
    }
    return w;
}

LaplacianSymbol laplacian_symbol(const Grid& grid) {
    const Wavenumbers w = wavenumbers(grid);
    LaplacianSymbol s;
    s.mu.resize(w.kx.size());
    if (grid.laplacian() == LaplacianKind::Spectral) {
        for (std::size_t m = 0; m < s.mu.size(); ++m) {
            s.mu[m] = -(w.kx[m] * w.kx[m] + w.ky[m] * w.ky[m]);
        }
        return s;
    }
    const double hx = grid.hx();
    const double hy = grid.hy();
    for (std::size_t m = 0; m < s.mu.size(); ++m) {
        const double sx = std::sin(0.5 * w.kx[m] * hx);
        const double sy = std::sin(0.5 * w.ky[m] * hy);
        s.mu[m] = -(4.0 / (hx * hx)) * sx * sx - (4.0 / (hy * hy)) * sy * sy;
    }
    return s;
}

std::vector<double> derivative_weight(const Grid& grid, int alpha_x, int alpha_y) {
    if (alpha_x < 0 || alpha_y < 0) throw ContractError("derivative_weight: negative order");
    if (alpha_x + alpha_y > 6) {
        throw UnsupportedOrderError("derivative order " + std::to_string(alpha_x + alpha_y) +
                                    " exceeds the supported maximum of 6");
    }
    const Wavenumbers w = wavenumbers(grid);
    std::vector<double> out(w.kx.size());
    for (std::size_t m = 0; m < out.size(); ++m) {
        out[m] = int_pow(w.kx[m] * w.kx[m], alpha_x) * int_pow(w.ky[m] * w.ky[m], alpha_y);
    }
    return out;
}

std::vector<double> coefficient_energy(const SpectralCoeffs& coeffs) {
    const Grid& grid = coeffs.grid();
    std::vector<double> e(coeffs.size());
    if (grid.boundary() == Boundary::Neumann) {
        // int_0^{2pi} cos^2(k x / 2) dx is 2 pi for k = 0 and pi otherwise.
        auto len = [](int k) { return k == 0 ? kTwoPi : 0.5 * kTwoPi; };
        auto a = coeffs.cosine();
        for (int l = 0; l < grid.ny(); ++l) {
            for (int k = 0; k < grid.nx(); ++k) {
                const std::size_t m = grid.index(k, l);
                e[m] = a[m] * a[m] * len(k) * len(l);
            }
        }
    } else {
        const int hn = grid.half_nx();
        auto c = coeffs.fourier();
        for (int l = 0; l < grid.ny(); ++l) {
            for (int k = 0; k < hn; ++k) {
                const std::size_t m = static_cast<std::size_t>(l) * hn + k;
                // Interior x modes stand for themselves and their conjugate partner.
                const double mult = (k == 0 || 2 * k == grid.nx()) ? 1.0 : 2.0;
                e[m] = kDomainArea * mult * std::norm(c[m]);
            }
        }
    }
    return e;
}

Field apply_multiplier(const Field& v, std::span<const double> factor) {
    SpectralCoeffs c = forward(v);
    c.scale(factor);
    return inverse(c);
}

}  // namespace acsplit
