#include "longrun/config.hpp"

namespace longrun {

namespace {
NumericConfig& mutable_default() {
  static NumericConfig config;
  return config;
}
}  // namespace

const NumericConfig& default_config() { return mutable_default(); }

void set_default_config(const NumericConfig& config) { mutable_default() = config; }

const char* version() { return LONGRUN_VERSION; }

}  // namespace longrun
