#pragma once

#include <complex>
#include <vector>

#include <fftw3.h>

namespace wente::detail {

// Real <-> half-complex transforms of one angular ring, plus the spectral
// derivative. Plans are built once per length with FFTW_ESTIMATE and reused
// through internal scratch buffers, so results are deterministic.
class ThetaFFT {
 public:
  explicit ThetaFFT(int n);
  ~ThetaFFT();
  ThetaFFT(const ThetaFFT&) = delete;
  ThetaFFT& operator=(const ThetaFFT&) = delete;

  int n() const { return n_; }
  int n_modes() const { return n_ / 2 + 1; }

  // values (length n) -> modes (length n/2+1), DFT normalized by 1/n
  void forward(const double* values, std::complex<double>* modes);
  // modes -> values
  void backward(const std::complex<double>* modes, double* values);
  // d/dtheta by ik multipliers; Nyquist mode dropped
  void derivative(const double* values, double* out);

 private:
  int n_;
  double* real_buf_;
  fftw_complex* cplx_buf_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

}  // namespace wente::detail
