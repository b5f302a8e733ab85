#ifndef CUNTZ_ERROR_HPP
#define CUNTZ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cuntz {

/// A violated precondition or invalid input value (dimension mismatch,
/// payload outside its cone, stage below the admissible start, ...).
class contract_error : public std::invalid_argument {
public:
    explicit contract_error(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace cuntz

#endif
