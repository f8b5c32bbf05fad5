#ifndef RISKOPT_TEST_UTIL_HPP
#define RISKOPT_TEST_UTIL_HPP

#include "doctest.h"
#include "riskopt/errors.hpp"

#define CHECK_ERROR_KIND(expr, expected)                     \
  do {                                                       \
    bool caught_ = false;                                    \
    try {                                                    \
      (void)(expr);                                          \
    } catch (const riskopt::Error& e_) {                     \
      caught_ = true;                                        \
      CHECK(e_.kind() == (expected));                        \
    }                                                        \
    CHECK_MESSAGE(caught_, "expected an error from " #expr); \
  } while (0)

#endif  // RISKOPT_TEST_UTIL_HPP
