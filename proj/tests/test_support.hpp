#pragma once

#include <cone_spectra/error.hpp>

namespace test_support {

/// Code of the cone_spectra::Error raised by f, or IoFailure when f returns
/// normally (no test expects IoFailure from a pure computation).
template <class F>
cone_spectra::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const cone_spectra::Error& e) {
    return e.code();
  }
  return cone_spectra::ErrorCode::IoFailure;
}

}  // namespace test_support
