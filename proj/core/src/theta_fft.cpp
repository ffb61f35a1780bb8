#include "theta_fft.hpp"

#include <cstring>

namespace wente::detail {

ThetaFFT::ThetaFFT(int n) : n_(n) {
  real_buf_ = fftw_alloc_real(n_);
  cplx_buf_ = fftw_alloc_complex(n_ / 2 + 1);
  fwd_ = fftw_plan_dft_r2c_1d(n_, real_buf_, cplx_buf_, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_c2r_1d(n_, cplx_buf_, real_buf_, FFTW_ESTIMATE);
}

ThetaFFT::~ThetaFFT() {
  fftw_destroy_plan(fwd_);
  fftw_destroy_plan(bwd_);
  fftw_free(real_buf_);
  fftw_free(cplx_buf_);
}

void ThetaFFT::forward(const double* values, std::complex<double>* modes) {
  std::memcpy(real_buf_, values, sizeof(double) * n_);
  fftw_execute(fwd_);
  const double scale = 1.0 / n_;
  for (int k = 0; k < n_modes(); ++k)
    modes[k] = scale * std::complex<double>(cplx_buf_[k][0], cplx_buf_[k][1]);
}

void ThetaFFT::backward(const std::complex<double>* modes, double* values) {
  for (int k = 0; k < n_modes(); ++k) {
    cplx_buf_[k][0] = modes[k].real();
    cplx_buf_[k][1] = modes[k].imag();
  }
  fftw_execute(bwd_);
  std::memcpy(values, real_buf_, sizeof(double) * n_);
}

void ThetaFFT::derivative(const double* values, double* out) {
  // remove the mean first; it never contributes to the derivative but its
  // rounding leakage would be amplified by the k multipliers
  double mean = 0.0;
  for (int i = 0; i < n_; ++i) mean += values[i];
  mean /= n_;
  for (int i = 0; i < n_; ++i) real_buf_[i] = values[i] - mean;
  fftw_execute(fwd_);
  const double scale = 1.0 / n_;
  std::vector<std::complex<double>> modes(n_modes());
  for (int k = 0; k < n_modes(); ++k)
    modes[k] = scale * std::complex<double>(0.0, static_cast<double>(k)) *
               std::complex<double>(cplx_buf_[k][0], cplx_buf_[k][1]);
  if (n_ % 2 == 0) modes[n_ / 2] = 0.0;  // Nyquist has no odd partner
  backward(modes.data(), out);
}

}  // namespace wente::detail
