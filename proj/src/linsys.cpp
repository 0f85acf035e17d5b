#include "cubics/linsys.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cubics/error.hpp"
#include "cubics/gf/matrix.hpp"
#include "cubics/gf/projective.hpp"

namespace cubics::linsys {

using gf::Field;

std::uint64_t MemberIndex::ordinal(std::uint64_t m) const { return gf::projective_ordinal(m, coeffs); }

MemberIndex MemberIndex::at(std::uint64_t m, unsigned n, std::uint64_t ordinal) {
  MemberIndex out{std::vector<Elem>(n)};
  gf::projective_tuple(m, ordinal, out.coeffs);
  return out;
}

LinearSystem::LinearSystem(FieldPtr base, std::vector<CubicForm> basis, std::string label)
    : base_(std::move(base)), basis_(std::move(basis)), label_(std::move(label)) {
  if (basis_.empty()) throw std::invalid_argument("linear system needs at least one form");
  for (const auto& F : basis_)
    if (!F.f().same_as(*base_)) throw std::invalid_argument("basis form is not over the system's base field");
  if (independence_rank(basis_) != basis_.size())
    throw std::invalid_argument("basis forms of '" + label_ + "' are linearly dependent");
}

std::uint64_t LinearSystem::member_count() const {
  return gf::projective_count(base_->size(), static_cast<unsigned>(basis_.size()));
}

CubicForm LinearSystem::member(std::span<const Elem> coeffs) const {
  if (coeffs.size() != basis_.size()) throw std::invalid_argument("member tuple has the wrong length");
  CubicForm out(base_);
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (!coeffs[i].is_zero()) out = out + basis_[i].scaled(coeffs[i]);
  return out;
}

LinearSystem LinearSystem::lifted(const gf::Embedding& emb, std::string label) const {
  std::vector<CubicForm> basis;
  for (const auto& F : basis_) basis.push_back(F.lifted(emb));
  return LinearSystem(emb.target(), std::move(basis), std::move(label));
}

void for_each_member(const LinearSystem& S, const std::function<void(const MemberIndex&, const CubicForm&)>& fn) {
  const std::uint64_t m = S.base()->size();
  const auto n = static_cast<unsigned>(S.basis().size());
  const std::uint64_t count = S.member_count();
  for (std::uint64_t o = 0; o < count; ++o) {
    const MemberIndex idx = MemberIndex::at(m, n, o);
    fn(idx, S.member(idx));
  }
}

std::size_t independence_rank(std::span<const CubicForm> forms) {
  if (forms.empty()) return 0;
  gf::Matrix M(forms[0].field(), forms.size(), 10);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (!forms[i].f().same_as(forms[0].f())) throw std::invalid_argument("forms over different fields");
    for (std::size_t j = 0; j < 10; ++j) M.at(i, j) = forms[i][j];
  }
  return gf::rank(std::move(M));
}

namespace {

// Arithmetic on F_q codes. Small fields use local tables.
class BaseOps {
 public:
  explicit BaseOps(const Field& f) : f_(f), q_(f.size()), prime_(f.degree() == 1) {
    if (!prime_ && q_ <= 256) {
      add_.resize(q_ * q_);
      mul_.resize(q_ * q_);
      for (std::uint64_t a = 0; a < q_; ++a)
        for (std::uint64_t b = 0; b < q_; ++b) {
          add_[a * q_ + b] = static_cast<std::uint16_t>(f.add({a}, {b}).code);
          mul_[a * q_ + b] = static_cast<std::uint16_t>(f.mul({a}, {b}).code);
        }
    }
    inv_.resize(q_);
    for (std::uint64_t a = 1; a < q_; ++a) inv_[a] = static_cast<std::uint32_t>(f.inv({a}).code);
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (prime_) return static_cast<std::uint32_t>((std::uint64_t{a} + b) % q_);
    if (!add_.empty()) return add_[a * q_ + b];
    return static_cast<std::uint32_t>(f_.add({a}, {b}).code);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (prime_) return static_cast<std::uint32_t>(std::uint64_t{a} * b % q_);
    if (!mul_.empty()) return mul_[a * q_ + b];
    return static_cast<std::uint32_t>(f_.mul({a}, {b}).code);
  }
  std::uint32_t neg(std::uint32_t a) const {
    if (prime_) return a == 0 ? 0 : static_cast<std::uint32_t>(q_ - a);
    return static_cast<std::uint32_t>(f_.neg({a}).code);
  }
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
  bool prime() const { return prime_; }
  std::uint64_t q() const { return q_; }

 private:
  const Field& f_;
  std::uint64_t q_;
  bool prime_;
  std::vector<std::uint16_t> add_, mul_;
  std::vector<std::uint32_t> inv_;
};

constexpr std::size_t kCols = 12;

// Per-thread workspace for the line scan.
class LineKernel {
 public:
  LineKernel(const LinearSystem& S, const gf::Tower& tower)
      : tower_(tower), ext_(*tower.cubic()), coords_(tower.cubic_coordinates()), ops_(*tower.base()),
        n_(S.basis().size()) {
    if (!S.base()->same_as(*tower.base())) throw std::invalid_argument("system is not over the tower's base field");
    if (n_ > 12) throw std::invalid_argument("line scan supports at most 12 basis forms");
    coeff_.assign(n_ * 10, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t m = 0; m < 10; ++m) {
        coeff_[i * 10 + m] = static_cast<std::uint32_t>(S.basis()[i][m].code);
        if (coeff_[i * 10 + m] != 0) used_[m] = true;
      }
    for (std::size_t m = 0; m < 10; ++m) {
      std::size_t k = 0;
      for (int v = 0; v < 3; ++v)
        for (int e = 0; e < forms::kCubicMonomials[m][v]; ++e) vars_[m][k++] = v;
    }
    rows_.resize(n_ * (kCols + n_));
  }

  // Appends the ordinals of all members divisible by the line with the given
  // canonical coefficients; returns how many were appended.
  std::size_t members_on_line(const std::array<Elem, 3>& L, std::vector<std::uint64_t>& out) {
    line_points(L);
    restrict_monomials();
    build_rows();
    return kernel_members(out);
  }

 private:
  void line_points(const std::array<Elem, 3>& L) {
    int pivot = 0;
    while (L[pivot].is_zero()) ++pivot;
    int free_var[2], k = 0;
    for (int i = 0; i < 3; ++i)
      if (i != pivot) free_var[k++] = i;
    // L is canonical, so L[pivot] = 1.
    a_ = {Elem{0}, Elem{0}, Elem{0}};
    b_ = a_;
    a_[free_var[0]] = ext_.one();
    a_[pivot] = ext_.neg(L[free_var[0]]);
    b_[free_var[1]] = ext_.one();
    b_[pivot] = ext_.neg(L[free_var[1]]);
  }

  void restrict_monomials() {
    const Field& f = ext_;
    for (std::size_t m = 0; m < 10; ++m) {
      if (!used_[m]) continue;
      const int u = vars_[m][0], v = vars_[m][1], w = vars_[m][2];
      const Elem u0 = a_[u], u1 = b_[u], v0 = a_[v], v1 = b_[v], w0 = a_[w], w1 = b_[w];
      const Elem uv00 = f.mul(u0, v0), uv01 = f.mul(u0, v1), uv10 = f.mul(u1, v0), uv11 = f.mul(u1, v1);
      const Elem mid = f.add(uv01, uv10);
      const Elem c[4] = {f.mul(uv00, w0), f.add(f.mul(uv00, w1), f.mul(mid, w0)),
                         f.add(f.mul(mid, w1), f.mul(uv11, w0)), f.mul(uv11, w1)};
      for (int j = 0; j < 4; ++j) {
        const std::uint32_t* row = coords_.table_row(c[j]);
        for (int r = 0; r < 3; ++r) mono_[m][j * 3 + r] = row[r];
      }
    }
  }

  void build_rows() {
    const std::size_t width = kCols + n_;
    std::fill(rows_.begin(), rows_.end(), 0);
    for (std::size_t i = 0; i < n_; ++i) {
      std::uint32_t* row = rows_.data() + i * width;
      const std::uint32_t* c = coeff_.data() + i * 10;
      if (ops_.prime()) {
        std::uint64_t acc[kCols] = {};
        for (std::size_t m = 0; m < 10; ++m)
          if (c[m])
            for (std::size_t j = 0; j < kCols; ++j) acc[j] += std::uint64_t{c[m]} * mono_[m][j];
        for (std::size_t j = 0; j < kCols; ++j) row[j] = static_cast<std::uint32_t>(acc[j] % ops_.q());
      } else {
        for (std::size_t m = 0; m < 10; ++m)
          if (c[m])
            for (std::size_t j = 0; j < kCols; ++j) row[j] = ops_.add(row[j], ops_.mul(c[m], mono_[m][j]));
      }
      row[kCols + i] = 1;
    }
  }

  // Forward elimination on [rows | I]; rows that vanish in the first twelve
  // columns carry a basis of the left kernel in their identity part.
  std::size_t kernel_members(std::vector<std::uint64_t>& out) {
    const std::size_t width = kCols + n_;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < kCols && rank < n_; ++col) {
      std::size_t piv = rank;
      while (piv < n_ && rows_[piv * width + col] == 0) ++piv;
      if (piv == n_) continue;
      if (piv != rank)
        std::swap_ranges(rows_.begin() + piv * width, rows_.begin() + (piv + 1) * width, rows_.begin() + rank * width);
      const std::uint32_t* prow = rows_.data() + rank * width;
      const std::uint32_t inv = ops_.inv(prow[col]);
      for (std::size_t r = rank + 1; r < n_; ++r) {
        std::uint32_t* row = rows_.data() + r * width;
        if (row[col] == 0) continue;
        const std::uint32_t factor = ops_.neg(ops_.mul(row[col], inv));
        for (std::size_t j = col; j < width; ++j) row[j] = ops_.add(row[j], ops_.mul(factor, prow[j]));
      }
      ++rank;
    }
    if (rank == n_) return 0;

    const std::size_t dim = n_ - rank;
    const std::uint64_t q = ops_.q();
    std::vector<Elem> combo(dim), member(n_);
    const std::uint64_t combos = gf::projective_count(q, static_cast<unsigned>(dim));
    for (std::uint64_t c = 0; c < combos; ++c) {
      gf::projective_tuple(q, c, combo);
      for (std::size_t i = 0; i < n_; ++i) {
        std::uint32_t acc = 0;
        for (std::size_t d = 0; d < dim; ++d)
          acc = ops_.add(acc, ops_.mul(static_cast<std::uint32_t>(combo[d].code),
                                       rows_[(rank + d) * width + kCols + i]));
        member[i] = Elem{acc};
      }
      gf::canonicalize(*tower_.base(), member);
      out.push_back(gf::projective_ordinal(q, member));
    }
    return combos;
  }

  const gf::Tower& tower_;
  const Field& ext_;
  const gf::SubfieldCoordinates& coords_;
  BaseOps ops_;
  std::size_t n_;
  std::vector<std::uint32_t> coeff_;
  std::array<bool, 10> used_{};
  std::array<std::array<int, 3>, 10> vars_{};
  std::array<Elem, 3> a_{}, b_{};
  std::array<std::array<std::uint32_t, kCols>, 10> mono_{};
  std::vector<std::uint32_t> rows_;
};

struct Hit {
  std::uint64_t member;
  std::uint64_t line;
  bool operator<(const Hit& o) const { return member != o.member ? member < o.member : line < o.line; }
};

}  // namespace

std::vector<MemberIndex> members_divisible_by(const LinearSystem& S, const gf::Tower& tower, const LinearForm& line) {
  if (!line.f().same_as(*tower.cubic())) throw std::invalid_argument("line is not over F_{q^3}");
  if (!tower.cubic_coordinates().has_table()) throw std::invalid_argument("F_{q^3} is too large for the line scan");
  LineKernel kernel(S, tower);
  std::vector<std::uint64_t> ords;
  kernel.members_on_line(line.normalized().coeffs(), ords);
  std::sort(ords.begin(), ords.end());
  std::vector<MemberIndex> out;
  const auto n = static_cast<unsigned>(S.basis().size());
  for (auto o : ords) out.push_back(MemberIndex::at(S.base()->size(), n, o));
  return out;
}

ScanReport scan_reducible_members(const LinearSystem& S, const gf::Tower& tower, const ScanOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  if (!tower.cubic_coordinates().has_table()) throw std::invalid_argument("F_{q^3} is too large for the line scan");
  const auto& ext = tower.cubic();
  const std::uint64_t Q = ext->size();
  const std::uint64_t total = forms::plane_size(Q);

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  constexpr std::uint64_t kChunk = 4096;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, (total + kChunk - 1) / kChunk));
  threads = std::max(threads, 1u);

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> scanned{0};
  std::atomic<bool> stop{false};
  std::vector<std::vector<Hit>> hits(threads);
  std::vector<std::exception_ptr> errors(threads);

  auto worker = [&](unsigned t) {
    try {
      LineKernel kernel(S, tower);
      std::vector<std::uint64_t> found;
      std::array<Elem, 3> L;
      std::uint64_t local = 0;
      while (!stop.load(std::memory_order_relaxed)) {
        const std::uint64_t begin = next.fetch_add(kChunk);
        if (begin >= total) break;
        const std::uint64_t end = std::min(total, begin + kChunk);
        for (std::uint64_t i = begin; i < end; ++i) {
          gf::projective_tuple(Q, i, L);
          found.clear();
          ++local;
          if (kernel.members_on_line(L, found) == 0) continue;
          for (auto o : found) hits[t].push_back({o, i});
          if (opts.early_abort) {
            stop.store(true);
            break;
          }
        }
      }
      scanned += local;
    } catch (...) {
      errors[t] = std::current_exception();
      stop.store(true);
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<Hit> merged;
  for (auto& h : hits) merged.insert(merged.end(), h.begin(), h.end());
  std::sort(merged.begin(), merged.end());

  ScanReport report;
  report.label = S.label();
  report.member_count = S.member_count();
  report.lines_total = total;
  report.lines_scanned = scanned.load();
  report.incidences = merged.size();
  report.threads = threads;
  report.early_abort = opts.early_abort;
  report.aborted = opts.early_abort && !merged.empty();

  const auto n = static_cast<unsigned>(S.basis().size());
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (i > 0 && merged[i].member == merged[i - 1].member) continue;
    ReducibleMember r{MemberIndex::at(S.base()->size(), n, merged[i].member), CubicForm(S.base()), {}};
    r.form = S.member(r.index);
    if (r.form.is_zero()) throw InternalError("zero member in an independent system");
    // The smallest hit line divides the member; it spares classify a full scan.
    r.verdict = classify::classify(r.form, tower, forms::line_at(ext, merged[i].line));
    if (r.verdict.geometrically_irreducible())
      throw InternalError("line scan flagged an irreducible member " + forms::to_string(r.form));
    report.reducible.push_back(std::move(r));
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ScanReport scan_naive(const LinearSystem& S, const gf::Tower& tower) {
  const auto start = std::chrono::steady_clock::now();
  ScanReport report;
  report.label = S.label();
  report.member_count = S.member_count();
  report.lines_total = forms::plane_size(tower.cubic()->size());
  for_each_member(S, [&](const MemberIndex& idx, const CubicForm& F) {
    auto verdict = classify::classify(F, tower);
    if (!verdict.geometrically_irreducible()) report.reducible.push_back({idx, F, std::move(verdict)});
  });
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

LinearSystem cubics_through_points(std::span<const ProjectivePoint> points, const gf::Tower& tower,
                                   std::string label) {
  const auto& top = tower.top();
  if (points.size() != 6) throw std::invalid_argument("expected an orbit of 6 points");
  std::vector<ProjectivePoint> canon;
  for (const auto& P : points) {
    if (!P.f().same_as(*top)) throw std::invalid_argument("orbit points must lie over F_{q^6}");
    if (P.is_zero()) throw std::invalid_argument("zero vector is not a point");
    canon.push_back(P.normalized());
  }
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j)
      if (canon[i] == canon[j]) throw std::invalid_argument("orbit points are not distinct");
  for (const auto& P : canon) {
    const auto image = forms::frobenius_form(P, tower).normalized();
    if (std::find(canon.begin(), canon.end(), image) == canon.end())
      throw std::invalid_argument("point set is not closed under Frobenius");
  }
  // Closure plus distinctness on 6 points does not yet rule out two orbits of
  // size 3 (or 2 + 4 etc.); require the first point to generate all six.
  {
    auto P = canon[0];
    for (int i = 1; i < 6; ++i) {
      P = forms::frobenius_form(P, tower).normalized();
      if (P == canon[0]) throw std::invalid_argument("points do not form a single orbit of size 6");
    }
  }

  // F(P_0) = 0 with F_q coefficients implies F(P_0^sigma^i) = 0 for all i.
  const auto& coords = tower.top_coordinates();
  const unsigned r = coords.relative_degree();
  const auto mono = forms::cubic_monomials_at(*top, canon[0][0], canon[0][1], canon[0][2]);
  gf::Matrix conditions(tower.base(), r, 10);
  std::vector<Elem> c(r);
  for (std::size_t m = 0; m < 10; ++m) {
    coords.coordinates(mono[m], c);
    for (unsigned j = 0; j < r; ++j) conditions.at(j, m) = c[j];
  }
  const auto kernel = gf::nullspace(conditions);
  if (kernel.size() < 4)
    throw InternalError("cubics through a 6-point orbit form a space of dimension " + std::to_string(kernel.size()) +
                        " < 4");
  std::vector<CubicForm> basis;
  for (const auto& v : kernel) {
    CubicForm F(tower.base());
    for (std::size_t m = 0; m < 10; ++m) F[m] = v[m];
    basis.push_back(F);
  }
  return LinearSystem(tower.base(), std::move(basis), std::move(label));
}

}  // namespace cubics::linsys
