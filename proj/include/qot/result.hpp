#pragma once

#include <utility>
#include <variant>

namespace qot {

/// Minimal success-or-typed-error carrier for operations whose failures are
/// data, not exceptions.
template <class T, class E>
class Result {
 public:
  Result(T value) : v_(std::move(value)) {}
  Result(E error) : v_(std::move(error)) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& { return std::get<T>(v_); }
  T& value() & { return std::get<T>(v_); }
  T&& value() && { return std::get<T>(std::move(v_)); }

  const E& error() const& { return std::get<E>(v_); }
  E& error() & { return std::get<E>(v_); }

 private:
  std::variant<T, E> v_;
};

}  // namespace qot
