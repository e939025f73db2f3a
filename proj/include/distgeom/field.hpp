#pragma once

// Type-erased smooth fields. A field is stored once per scalar type it may be
// evaluated on (double and two nested dual layers), which is enough for the
// doubly nested covariant derivatives used throughout.

#include <functional>
#include <memory>
#include <stdexcept>
#include <type_traits>

#include "distgeom/linalg.hpp"

namespace distgeom {

template <class S>
using Scalar = S;

inline constexpr int kMaxNesting = 2;

template <template <class> class Out>
class Field {
 public:
  Field() = default;

  template <class F>
    requires(!std::is_same_v<std::decay_t<F>, Field>)
  explicit Field(F f) : impl_(std::make_shared<const Impl>(Impl{f, f, f})) {}

  template <class S>
  Out<S> operator()(const Vec<S>& x) const {
    if constexpr (std::is_same_v<S, double>) {
      return impl_->f0(x);
    } else if constexpr (std::is_same_v<S, D1>) {
      return impl_->f1(x);
    } else if constexpr (std::is_same_v<S, D2>) {
      return impl_->f2(x);
    } else {
      static_assert(dual_depth<S>::value <= kMaxNesting, "field nesting too deep");
      return Out<S>{};
    }
  }

  explicit operator bool() const { return static_cast<bool>(impl_); }

 private:
  struct Impl {
    std::function<Out<double>(const Vec<double>&)> f0;
    std::function<Out<D1>(const Vec<D1>&)> f1;
    std::function<Out<D2>(const Vec<D2>&)> f2;
  };
  std::shared_ptr<const Impl> impl_;
};

using VectorField = Field<Vec>;
using EndoField = Field<Mat>;
using ScalarField = Field<Scalar>;

/// Thrown when a composite field is evaluated deeper than the stored layers.
struct NestingError : std::logic_error {
  NestingError() : std::logic_error("derivative nesting exceeds supported depth") {}
};

/// Constant vector field.
inline VectorField constant_field(const Vec<double>& v) {
  return VectorField([v](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    return Vec<S>(v);
  });
}

inline EndoField constant_endo(const Mat<double>& m) {
  return EndoField([m](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    return Mat<S>(m);
  });
}

}  // namespace distgeom
