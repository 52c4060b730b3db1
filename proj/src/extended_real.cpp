#include "longrun/extended_real.hpp"

#include "longrun/format.hpp"

namespace longrun {

std::string ExtendedReal::to_string() const {
  if (kind_ == Kind::pos_inf) return "inf";
  if (kind_ == Kind::neg_inf) return "-inf";
  return format_double(value_);
}

}  // namespace longrun
