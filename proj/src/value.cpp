#include "joinmi/value.hpp"

#include <array>
#include <charconv>

namespace joinmi {

std::string_view to_string(ValueType t) noexcept {
    return t == ValueType::Numeric ? "numeric" : "discrete";
}

std::string format_number(double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string format_value(const Value& v) {
    if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
    return std::get<std::string>(v);
}

}  // namespace joinmi
