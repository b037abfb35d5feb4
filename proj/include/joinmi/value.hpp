#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace joinmi {

enum class ValueType { Discrete, Numeric };

/// A cell value: Discrete text or a finite Numeric double.
using Value = std::variant<std::string, double>;

inline ValueType type_of(const Value& v) noexcept {
    return std::holds_alternative<double>(v) ? ValueType::Numeric : ValueType::Discrete;
}

std::string_view to_string(ValueType t) noexcept;

/// Text form used for CSV output and for turning numbers into symbols.
/// Numbers print in shortest round-trip form.
std::string format_value(const Value& v);

std::string format_number(double v);

/// Thrown for bad input data (as opposed to programming errors).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace joinmi
