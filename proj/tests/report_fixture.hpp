#pragma once

#include <map>
#include <string>
#include <vector>

#include "vtask/evalkit.hpp"

namespace vtask::testing {

struct RowSpec {
  const char* id;
  TaskClass cls;
  bool trained;
  std::size_t n_trained;
  std::size_t validated;
  std::size_t correct;
  double miss_similarity;
};

// Row values shaped like a full-scale run; misses all share one similarity
// so the mean is exact.
inline EvalResult synthetic_result() {
  const RowSpec specs[] = {
      {"pa00", TaskClass::pa, true, 1900, 100, 100, 0.0},
      {"pa01", TaskClass::pa, true, 1900, 100, 99, 0.947},
      {"pa17", TaskClass::pa, false, 0, 100, 97, 0.912},
      {"pr00", TaskClass::pr, true, 2850, 150, 150, 0.0},
      {"pr10", TaskClass::pr, false, 0, 150, 120, 0.88},
      {"pg01", TaskClass::pg, true, 3800, 200, 198, 0.975},
      {"pg05", TaskClass::pg, false, 0, 200, 0, 0.5},
      {"da00", TaskClass::da, true, 3800, 200, 188, 0.861},
      {"da03", TaskClass::da, false, 0, 200, 101, 0.7},
      {"dr00", TaskClass::dr, true, 3800, 200, 200, 0.0},
      {"dr04", TaskClass::dr, false, 0, 200, 5, 0.25},
      {"mt00", TaskClass::mt, true, 5000, 250, 240, 0.96},
      {"mt01", TaskClass::mt, false, 0, 250, 20, 0.66},
  };
  std::vector<EvalRecord> records;
  std::map<std::string, std::size_t> n_trained;
  for (const RowSpec& s : specs) {
    n_trained[s.id] = s.n_trained;
    for (std::size_t i = 0; i < s.validated; ++i) {
      EvalRecord r;
      r.key = PairKey{s.id, i};
      r.cls = s.cls;
      r.trained = s.trained;
      r.correct = i < s.correct;
      r.similarity = r.correct ? 1.0 : s.miss_similarity;
      r.error_class = r.correct ? ErrorClass::exact : ErrorClass::identifier_mismatch;
      records.push_back(r);
    }
  }
  return summarize(std::move(records), n_trained);
}

}  // namespace vtask::testing
