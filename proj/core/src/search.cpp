#include "sumprod/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <thread>
#include <tuple>

#include "sumprod/error.hpp"
#include "sumprod/setalg.hpp"
#include "sumprod/subfields.hpp"

namespace sumprod {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  // acc * (n - k + i) is divisible by i; saturate before it can overflow.
  std::uint64_t acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = n - k + i;
    if (acc > kSaturated / factor) return kSaturated;
    acc = acc * factor / i;
  }
  return acc;
}

// Counts distinct sums and products of a member list with scratch stamp
// arrays, so no per-candidate allocation is needed.
class Evaluator {
 public:
  explicit Evaluator(const Field& f) : f_(f), sums_(f.order(), 0), prods_(f.order(), 0) {}

  std::uint64_t value(std::span<const Elem> xs) {
    if (++stamp_ == 0) {
      std::fill(sums_.begin(), sums_.end(), 0);
      std::fill(prods_.begin(), prods_.end(), 0);
      stamp_ = 1;
    }
    std::uint64_t s = 0, p = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = i; j < xs.size(); ++j) {
        auto& a = sums_[f_.add(xs[i], xs[j]).index];
        if (a != stamp_) { a = stamp_; ++s; }
        auto& b = prods_[f_.mul(xs[i], xs[j]).index];
        if (b != stamp_) { b = stamp_; ++p; }
      }
    }
    return std::max(s, p);
  }

 private:
  const Field& f_;
  std::vector<std::uint32_t> sums_, prods_;
  std::uint32_t stamp_ = 0;
};

SearchRecord make_record(const FieldPtr& field, std::uint32_t m, FSet best, std::uint64_t value) {
  SearchRecord r;
  r.field = field->spec_string();
  r.p = field->characteristic();
  r.n = field->degree();
  r.m = m;
  r.best_value = value;
  r.K = Rational(value) / m;
  if (m >= 2) r.exponent = std::log(static_cast<double>(value)) / std::log(static_cast<double>(m));
  r.best_admissible = AdmissibilityChecker(field).check(best).passed;
  r.best_set = std::move(best);
  return r;
}

void check_size(const Field& f, std::uint32_t m) {
  if (m == 0 || m > f.order() - 1) {
    fail(Errc::InvalidArgument, "m must lie in [1, " + std::to_string(f.order() - 1) + "]");
  }
}

}  // namespace

std::string_view method_name(SearchRecord::Method m) noexcept {
  return m == SearchRecord::Method::Exhaustive ? "exhaustive" : "anneal";
}

std::uint64_t sum_product_value(const FSet& a) {
  return std::max(sumset(a, a).size(), product_set(a, a).size());
}

SearchRecord exhaustive_min(const FieldPtr& field, std::uint32_t m, const ExhaustiveOptions& options) {
  const Field& f = *field;
  check_size(f, m);
  // The pool the free positions draw from; with dilation reduction 1 is
  // fixed and the other m - 1 members come from indices >= 2.
  const bool fix_one = options.modulo_dilation;
  std::vector<Elem> pool;
  for (std::uint32_t i = fix_one ? 2 : 1; i < f.order(); ++i) pool.push_back(Elem{i});
  const std::uint32_t k = fix_one ? m - 1 : m;
  const std::uint64_t total = binomial(pool.size(), k);
  if (total > options.budget) {
    fail(Errc::BudgetExceeded, std::to_string(total == kSaturated ? 0 : total) + " candidates exceed budget " +
                                   std::to_string(options.budget));
  }

  std::optional<AdmissibilityChecker> checker;
  if (options.admissible_only) checker.emplace(field);

  struct Best {
    std::uint64_t value = kSaturated;
    std::uint64_t rank = kSaturated;
    std::uint64_t evaluations = 0;
  };

  auto run_shard = [&](std::uint64_t lo, std::uint64_t hi) {
    Best best;
    if (lo >= hi) return best;
    Evaluator eval(f);
    // Unrank lo into the first combination of the shard.
    std::vector<std::uint32_t> idx(k);
    std::uint64_t r = lo;
    std::uint32_t start = 0;
    for (std::uint32_t i = 0; i < k; ++i) {
      for (std::uint32_t c = start;; ++c) {
        const std::uint64_t below = binomial(pool.size() - 1 - c, k - 1 - i);
        if (r < below) {
          idx[i] = c;
          start = c + 1;
          break;
        }
        r -= below;
      }
    }
    std::vector<Elem> members(m);
    for (std::uint64_t rank = lo; rank < hi; ++rank) {
      std::size_t pos = 0;
      if (fix_one) members[pos++] = f.one();
      for (auto i : idx) members[pos++] = pool[i];
      if (!checker || checker->admissible(members)) {
        ++best.evaluations;
        const auto v = eval.value(members);
        if (v < best.value) {
          best.value = v;
          best.rank = rank;
        }
      }
      // Next combination in lexicographic order.
      if (k == 0) break;
      std::int64_t i = static_cast<std::int64_t>(k) - 1;
      while (i >= 0 && idx[i] == pool.size() - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (auto j = static_cast<std::size_t>(i) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return best;
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(std::max<std::uint64_t>(total, 1))));
  std::vector<Best> partial(jobs);
  if (jobs == 1) {
    partial[0] = run_shard(0, total);
  } else {
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      const std::uint64_t lo = total * w / jobs, hi = total * (w + 1) / jobs;
      workers.emplace_back([&, w, lo, hi] { partial[w] = run_shard(lo, hi); });
    }
    for (auto& t : workers) t.join();
  }
  Best best;
  for (const auto& b : partial) {
    best.evaluations += b.evaluations;
    if (std::tie(b.value, b.rank) < std::tie(best.value, best.rank)) {
      best.value = b.value;
      best.rank = b.rank;
    }
  }
  if (best.rank == kSaturated) fail(Errc::Empty, "no admissible set of size " + std::to_string(m));

  // Unrank the winner.
  FSet set(field);
  if (fix_one) set.insert(f.one());
  std::uint64_t r = best.rank;
  std::uint32_t start = 0;
  for (std::uint32_t i = 0; i < k; ++i) {
    for (std::uint32_t c = start;; ++c) {
      const std::uint64_t below = binomial(pool.size() - 1 - c, k - 1 - i);
      if (r < below) {
        set.insert(pool[c]);
        start = c + 1;
        break;
      }
      r -= below;
    }
  }
  auto record = make_record(field, m, std::move(set), best.value);
  record.method = SearchRecord::Method::Exhaustive;
  record.admissible_only = options.admissible_only;
  record.evaluations = best.evaluations;
  return record;
}

namespace {

// Bounded draws by rejection so results do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = kSaturated - kSaturated % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

// Pair-count tables for the current candidate so a swap costs O(m).
class IncrementalValue {
 public:
  IncrementalValue(const Field& f, std::vector<Elem> members)
      : f_(f), members_(std::move(members)), sums_(f.order(), 0), prods_(f.order(), 0) {
    rebuild();
  }

  std::uint64_t value() const { return std::max(distinct_sums_, distinct_prods_); }
  const std::vector<Elem>& members() const { return members_; }

  void swap(std::size_t pos, Elem in) {
    const Elem out = members_[pos];
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i != pos) pair(out, members_[i], -1);
    }
    pair(out, out, -1);
    members_[pos] = in;
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i != pos) pair(in, members_[i], +1);
    }
    pair(in, in, +1);
  }

  void rebuild() {
    std::fill(sums_.begin(), sums_.end(), 0);
    std::fill(prods_.begin(), prods_.end(), 0);
    distinct_sums_ = distinct_prods_ = 0;
    for (std::size_t i = 0; i < members_.size(); ++i) {
      for (std::size_t j = i; j < members_.size(); ++j) pair(members_[i], members_[j], +1);
    }
  }

 private:
  void pair(Elem a, Elem b, int delta) {
    bump(sums_[f_.add(a, b).index], distinct_sums_, delta);
    bump(prods_[f_.mul(a, b).index], distinct_prods_, delta);
  }
  static void bump(std::uint32_t& slot, std::uint64_t& distinct, int delta) {
    if (delta > 0) {
      if (slot++ == 0) ++distinct;
    } else if (--slot == 0) {
      --distinct;
    }
  }

  const Field& f_;
  std::vector<Elem> members_;
  std::vector<std::uint32_t> sums_, prods_;
  std::uint64_t distinct_sums_ = 0, distinct_prods_ = 0;
};

constexpr std::uint64_t kCheckpointInterval = 1024;
constexpr std::uint64_t kStartAttempts = 100'000;
constexpr double kStartTemperature = 1.0;
constexpr double kEndTemperature = 0.01;

}  // namespace

SearchRecord anneal_min(const FieldPtr& field, std::uint32_t m, std::uint64_t iters, std::uint64_t seed,
                        bool admissible_only) {
  const Field& f = *field;
  check_size(f, m);
  if (iters == 0) fail(Errc::InvalidArgument, "iters must be at least 1");
  const std::uint32_t units = f.order() - 1;
  Rng rng(seed);
  std::optional<AdmissibilityChecker> checker;
  if (admissible_only) checker.emplace(field);

  std::vector<Elem> start;
  std::vector<char> in_set(f.order(), 0);
  for (std::uint64_t attempt = 0;; ++attempt) {
    if (attempt == kStartAttempts) fail(Errc::InvalidArgument, "no admissible starting set found");
    std::vector<std::uint32_t> pool(units);
    for (std::uint32_t i = 0; i < units; ++i) pool[i] = i + 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      const auto j = i + rng.below(units - i);
      std::swap(pool[i], pool[j]);
    }
    start.clear();
    for (std::uint32_t i = 0; i < m; ++i) start.push_back(Elem{pool[i]});
    if (!checker || checker->admissible(start)) break;
  }
  for (auto e : start) in_set[e.index] = 1;

  IncrementalValue current(f, start);
  std::vector<Elem> best = current.members();
  std::uint64_t best_value = current.value();
  const bool can_move = m < units;
  for (std::uint64_t step = 1; step < iters && can_move; ++step) {
    const double progress = iters > 2 ? static_cast<double>(step - 1) / static_cast<double>(iters - 2) : 1.0;
    const double temperature = kStartTemperature * std::pow(kEndTemperature / kStartTemperature, progress);
    const auto pos = static_cast<std::size_t>(rng.below(m));
    Elem in;
    do {
      in = Elem{static_cast<std::uint32_t>(1 + rng.below(units))};
    } while (in_set[in.index]);
    const double coin = rng.unit();

    if (checker) {
      auto proposal = current.members();
      proposal[pos] = in;
      if (!checker->admissible(proposal)) continue;
    }
    const Elem out = current.members()[pos];
    const auto before = current.value();
    current.swap(pos, in);
    const auto after = current.value();
    const double delta = static_cast<double>(after) - static_cast<double>(before);
    if (delta <= 0 || coin < std::exp(-delta / temperature)) {
      in_set[out.index] = 0;
      in_set[in.index] = 1;
    } else {
      current.swap(pos, out);
    }
    if (current.value() < best_value) {
      best_value = current.value();
      best = current.members();
    }
    if (step % kCheckpointInterval == 0) {
      const auto incremental = current.value();
      current.rebuild();
      if (current.value() != incremental) fail(Errc::Internal, "incremental evaluation drifted");
    }
  }

  FSet set = FSet::from_elems(field, best);
  const auto exact = sum_product_value(set);
  if (exact != best_value) fail(Errc::Internal, "best value does not match recomputation");
  auto record = make_record(field, m, std::move(set), exact);
  record.method = SearchRecord::Method::Anneal;
  record.admissible_only = admissible_only;
  record.seed = seed;
  record.evaluations = iters + 1;
  return record;
}

std::optional<double> benchmark_12_11(std::uint32_t m) {
  if (m < 2) return std::nullopt;
  const double x = m;
  return std::pow(x, 12.0 / 11.0) / std::pow(std::log2(x), 5.0 / 11.0);
}

std::vector<ChartRow> exponent_chart(std::span<const SearchRecord> records) {
  if (records.empty()) fail(Errc::Empty, "no records to chart");
  std::vector<ChartRow> rows;
  for (const auto& r : records) {
    ChartRow row;
    row.field = r.field;
    row.order = r.best_set.field_ptr() ? r.best_set.field().order() : 0;
    if (row.order == 0) {
      std::uint64_t q = 1;
      for (std::uint32_t i = 0; i < r.n; ++i) q *= r.p;
      row.order = q;
    }
    row.m = r.m;
    row.best_value = r.best_value;
    row.K = r.K;
    row.exponent = r.exponent;
    row.benchmark_12_11 = benchmark_12_11(r.m);
    if (r.m >= 2) {
      const double x = r.m;
      row.reference_15_14 = std::pow(x, 15.0 / 14.0) / std::pow(std::log(x), 2.0 / 7.0);
      row.reference_20_19 = std::pow(x, 20.0 / 19.0);
      row.reference_12_11_ln = std::pow(x, 12.0 / 11.0) / std::pow(std::log(x), 4.0 / 11.0);
    }
    row.method = std::string(method_name(r.method));
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ChartRow& a, const ChartRow& b) {
    return std::tie(a.order, a.m, a.field, a.method) < std::tie(b.order, b.m, b.field, b.method);
  });
  return rows;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

std::string fixed(std::optional<double> v) {
  if (!v) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

}  // namespace

std::string records_csv(std::span<const SearchRecord> records) {
  std::string out = "field,p,n,m,method,seed,best_value,K_num,K_den,exponent,benchmark_12_11,admissible,evaluations\r\n";
  for (const auto& r : records) {
    const std::string cols[] = {csv_escape(r.field),
                                std::to_string(r.p),
                                std::to_string(r.n),
                                std::to_string(r.m),
                                std::string(method_name(r.method)),
                                std::to_string(r.seed),
                                std::to_string(r.best_value),
                                numerator(r.K).str(),
                                denominator(r.K).str(),
                                fixed(r.exponent),
                                fixed(benchmark_12_11(r.m)),
                                r.best_admissible ? "true" : "false",
                                std::to_string(r.evaluations)};
    for (std::size_t i = 0; i < std::size(cols); ++i) {
      if (i) out += ',';
      out += cols[i];
    }
    out += "\r\n";
  }
  return out;
}

}  // namespace sumprod
