#ifndef VSKX_TESTS_SUPPORT_HPP_
#define VSKX_TESTS_SUPPORT_HPP_

#include <functional>

#include <gtest/gtest.h>

#include <vskx/error.hpp>

// Kind of the vskx::Error thrown by `fn`; records a failure if none is thrown.
inline vskx::ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const vskx::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected vskx::Error";
  return vskx::ErrorKind::Config;
}

#endif  // VSKX_TESTS_SUPPORT_HPP_
