#pragma once

#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace qreflect::detail {

// out[j] = sum_k in[k] e^{+2 pi i jk/N}, no 1/N scaling.
inline std::vector<std::complex<double>> unscaled_inverse_dft(
    const std::vector<std::complex<double>>& in) {
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<std::complex<double>> out;
  fft.inv(out, in);
  return out;
}

// out[k] = sum_j in[j] e^{-2 pi i jk/N}, no scaling.
inline std::vector<std::complex<double>> forward_dft(
    const std::vector<std::complex<double>>& in) {
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> out;
  fft.fwd(out, in);
  return out;
}

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace qreflect::detail
