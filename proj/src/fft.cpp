#include "magstrict/fft.hpp"

#include <mutex>
#include <new>
#include <utility>

namespace magstrict::fft {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

Plan checked(fftw_plan p) {
  if (p == nullptr) throw std::bad_alloc();
  return Plan(p);
}
}  // namespace

template <class T>
Buffer<T>::Buffer(std::size_t count) : size_(count) {
  data_ = static_cast<T*>(fftw_malloc(sizeof(T) * (count == 0 ? 1 : count)));
  if (data_ == nullptr) throw std::bad_alloc();
  for (std::size_t i = 0; i < count; ++i) data_[i] = T{};
}

template <class T>
Buffer<T>::~Buffer() {
  if (data_ != nullptr) fftw_free(data_);
}

template <class T>
Buffer<T>::Buffer(Buffer&& other) noexcept
    : data_(std::exchange(other.data_, nullptr)), size_(std::exchange(other.size_, 0)) {}

template <class T>
Buffer<T>& Buffer<T>::operator=(Buffer&& other) noexcept {
  if (this != &other) {
    if (data_ != nullptr) fftw_free(data_);
    data_ = std::exchange(other.data_, nullptr);
    size_ = std::exchange(other.size_, 0);
  }
  return *this;
}

template class Buffer<double>;
template class Buffer<std::complex<double>>;

Plan::~Plan() {
  if (plan_ != nullptr) {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
}

Plan& Plan::operator=(Plan&& other) noexcept {
  if (this != &other) {
    if (plan_ != nullptr) {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(plan_);
    }
    plan_ = std::exchange(other.plan_, nullptr);
  }
  return *this;
}

void Plan::execute() const { fftw_execute(plan_); }

Plan plan_r2c(int ny, int nx, RealBuffer& in, ComplexBuffer& out) {
  std::lock_guard lock(planner_mutex());
  return checked(fftw_plan_dft_r2c_2d(ny, nx, in.data(),
                                      reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE));
}

Plan plan_c2r(int ny, int nx, ComplexBuffer& in, RealBuffer& out) {
  std::lock_guard lock(planner_mutex());
  return checked(fftw_plan_dft_c2r_2d(ny, nx, reinterpret_cast<fftw_complex*>(in.data()),
                                      out.data(), FFTW_ESTIMATE));
}

Plan plan_dct2(int n, RealBuffer& data) {
  std::lock_guard lock(planner_mutex());
  return checked(
      fftw_plan_r2r_2d(n, n, data.data(), data.data(), FFTW_REDFT10, FFTW_REDFT10, FFTW_ESTIMATE));
}

Plan plan_dct3(int n, RealBuffer& data) {
  std::lock_guard lock(planner_mutex());
  return checked(
      fftw_plan_r2r_2d(n, n, data.data(), data.data(), FFTW_REDFT01, FFTW_REDFT01, FFTW_ESTIMATE));
}

}  // namespace magstrict::fft
