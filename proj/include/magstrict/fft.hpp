#pragma once

// Thin RAII layer over FFTW for the handful of 2D transforms the toolkit
// needs. Plans are created with FFTW_ESTIMATE so input arrays are never
// clobbered during planning; planner calls are serialized internally since
// the FFTW planner is not reentrant.

#include <complex>
#include <cstddef>
#include <span>

#include <fftw3.h>

namespace magstrict::fft {

/// fftw_malloc-backed array; move-only.
template <class T>
class Buffer {
 public:
  Buffer() = default;
  explicit Buffer(std::size_t count);
  ~Buffer();
  Buffer(Buffer&& other) noexcept;
  Buffer& operator=(Buffer&& other) noexcept;
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;

  T* data() { return data_; }
  const T* data() const { return data_; }
  std::size_t size() const { return size_; }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }
  std::span<T> span() { return {data_, size_}; }

 private:
  T* data_ = nullptr;
  std::size_t size_ = 0;
};

using RealBuffer = Buffer<double>;
using ComplexBuffer = Buffer<std::complex<double>>;

class Plan {
 public:
  Plan() = default;
  explicit Plan(fftw_plan p) : plan_(p) {}
  ~Plan();
  Plan(Plan&& other) noexcept : plan_(other.plan_) { other.plan_ = nullptr; }
  Plan& operator=(Plan&& other) noexcept;
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  void execute() const;

 private:
  fftw_plan plan_ = nullptr;
};

/// Forward real-to-complex transform of an ny x nx row-major array; output
/// is ny x (nx/2 + 1). Unnormalized.
Plan plan_r2c(int ny, int nx, RealBuffer& in, ComplexBuffer& out);
/// Inverse of plan_r2c, unnormalized (result is N times the input).
Plan plan_c2r(int ny, int nx, ComplexBuffer& in, RealBuffer& out);

/// 2D DCT-II (FFTW REDFT10 on both axes), in place on an n x n array:
///   Y[q][p] = 4 sum_{j,i} X[j][i] cos(pi p (i+1/2)/n) cos(pi q (j+1/2)/n)
Plan plan_dct2(int n, RealBuffer& data);
/// 2D DCT-III (FFTW REDFT01 on both axes), in place:
///   Y[j][i] = sum_{q,p} c_p c_q X[q][p] cos(pi p (i+1/2)/n) cos(pi q (j+1/2)/n)
/// with c_0 = 1 and c_p = 2 otherwise.
Plan plan_dct3(int n, RealBuffer& data);

/// Signed integer frequency for DFT index `idx` of a length-`len` axis.
inline int signed_frequency(int idx, int len) { return idx <= len / 2 ? idx : idx - len; }

}  // namespace magstrict::fft
