// coh/util.h

#ifndef COH_UTIL_H_
#define COH_UTIL_H_

#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace coh {

// Library errors carry a stable kind() so the CLI can emit machine-parsable
// error JSON without string matching.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

struct ManifestError : Error {
  explicit ManifestError(const std::string& m) : Error("ManifestError", m) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& m)
      : Error("ValidationError", m) {}
};
struct AudioError : Error {
  explicit AudioError(const std::string& m) : Error("AudioError", m) {}
};
struct CheckpointError : Error {
  explicit CheckpointError(const std::string& m)
      : Error("CheckpointError", m) {}
};
struct TrainError : Error {
  explicit TrainError(const std::string& m) : Error("TrainError", m) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error("ConfigError", m) {}
};

// Run fn(i) for i in [0, n) on up to `jobs` threads. fn must be pure per
// index (results written to preallocated, disjoint slots); result values are
// then independent of the thread count.
void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn);

int default_jobs();

}  // namespace coh

#endif  // COH_UTIL_H_
