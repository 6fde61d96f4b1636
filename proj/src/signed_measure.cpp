#include "qid/signed_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qid {

namespace {

bool lattice_compatible(const LatticeTag& a, const LatticeTag& b, std::int64_t& index_shift_b) {
    if (std::abs(a.spacing - b.spacing) > 1e-12 * std::max(a.spacing, b.spacing)) return false;
    const double shift = (b.offset - a.offset) / a.spacing;
    const double rounded = std::round(shift);
    if (std::abs(shift - rounded) > kLatticeFitTol) return false;
    index_shift_b = static_cast<std::int64_t>(rounded);
    return true;
}

std::int64_t checked_index(const LatticeTag& tag, double x) {
    const double raw = (x - tag.offset) / tag.spacing;
    const double rounded = std::round(raw);
    if (std::abs(x - (tag.offset + tag.spacing * rounded)) > kLatticeFitTol * std::max(1.0, std::abs(x)))
        throw std::invalid_argument("location does not lie on the declared lattice");
    return static_cast<std::int64_t>(rounded);
}

}  // namespace

void MeasureBuilder::add_index(std::int64_t n, double w) {
    if (w == 0.0) return;
    auto [it, inserted] = int_atoms_.try_emplace(n, w);
    if (!inserted) {
        it->second += w;
        if (it->second == 0.0) int_atoms_.erase(it);
    }
}

void MeasureBuilder::add_point(double x, double w) {
    if (w == 0.0) return;
    auto it = real_atoms_.lower_bound(x - kLocationMergeTol);
    if (it != real_atoms_.end() && std::abs(it->first - x) <= kLocationMergeTol) {
        it->second += w;
        if (it->second == 0.0) real_atoms_.erase(it);
        return;
    }
    real_atoms_.emplace_hint(it, x, w);
}

SignedMeasure MeasureBuilder::take() {
    SignedMeasure m;
    m.tag_ = tag_;
    m.int_atoms_ = std::move(int_atoms_);
    m.real_atoms_ = std::move(real_atoms_);
    return m;
}

SignedMeasure SignedMeasure::zero_on(const LatticeTag& tag) {
    SignedMeasure m;
    m.tag_ = tag;
    return m;
}

SignedMeasure SignedMeasure::dirac(double location, double weight) {
    return at_points({{location, weight}});
}

SignedMeasure SignedMeasure::dirac_integer(std::int64_t n, double weight) {
    return on_integers({{n, weight}});
}

SignedMeasure SignedMeasure::on_integers(const std::vector<std::pair<std::int64_t, double>>& atoms) {
    return on_lattice(LatticeTag{0.0, 1.0}, atoms);
}

SignedMeasure SignedMeasure::on_lattice(const LatticeTag& tag,
                                        const std::vector<std::pair<std::int64_t, double>>& atoms) {
    if (!(tag.spacing > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
    MeasureBuilder b(tag);
    for (const auto& [n, w] : atoms) b.add_index(n, w);
    return b.take();
}

SignedMeasure SignedMeasure::at_points(const std::vector<std::pair<double, double>>& atoms) {
    MeasureBuilder b(std::nullopt);
    for (const auto& [x, w] : atoms) b.add_point(x, w);
    return b.take();
}

SignedMeasure SignedMeasure::from_locations_on(const LatticeTag& tag,
                                               const std::vector<std::pair<double, double>>& atoms) {
    if (!(tag.spacing > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
    MeasureBuilder b(tag);
    for (const auto& [x, w] : atoms) b.add_index(checked_index(tag, x), w);
    return b.take();
}

bool SignedMeasure::empty() const {
    return is_lattice() ? int_atoms_.empty() : real_atoms_.empty();
}

std::size_t SignedMeasure::size() const {
    return is_lattice() ? int_atoms_.size() : real_atoms_.size();
}

double SignedMeasure::total_variation() const {
    double s = 0.0;
    if (is_lattice())
        for (const auto& [n, w] : int_atoms_) s += std::abs(w);
    else
        for (const auto& [x, w] : real_atoms_) s += std::abs(w);
    return s;
}

double SignedMeasure::total_mass() const {
    double s = 0.0;
    if (is_lattice())
        for (const auto& [n, w] : int_atoms_) s += w;
    else
        for (const auto& [x, w] : real_atoms_) s += w;
    return s;
}

double SignedMeasure::weight_at(double location) const {
    if (is_lattice()) {
        const double raw = (location - tag_->offset) / tag_->spacing;
        const double rounded = std::round(raw);
        if (std::abs(location - location_of_index(static_cast<std::int64_t>(rounded))) >
            kLocationMergeTol * std::max(1.0, std::abs(location)))
            return 0.0;
        return weight_at_index(static_cast<std::int64_t>(rounded));
    }
    auto it = real_atoms_.lower_bound(location - kLocationMergeTol);
    if (it != real_atoms_.end() && std::abs(it->first - location) <= kLocationMergeTol) return it->second;
    return 0.0;
}

double SignedMeasure::weight_at_index(std::int64_t n) const {
    if (!is_lattice()) throw std::logic_error("weight_at_index requires a lattice-tagged measure");
    auto it = int_atoms_.find(n);
    return it == int_atoms_.end() ? 0.0 : it->second;
}

double SignedMeasure::location_of_index(std::int64_t n) const {
    if (!is_lattice()) throw std::logic_error("location_of_index requires a lattice-tagged measure");
    return tag_->offset + tag_->spacing * static_cast<double>(n);
}

std::vector<std::pair<double, double>> SignedMeasure::atoms() const {
    std::vector<std::pair<double, double>> out;
    out.reserve(size());
    if (is_lattice())
        for (const auto& [n, w] : int_atoms_) out.emplace_back(location_of_index(n), w);
    else
        for (const auto& [x, w] : real_atoms_) out.emplace_back(x, w);
    return out;
}

const std::map<std::int64_t, double>& SignedMeasure::integer_atoms() const {
    if (!is_lattice()) throw std::logic_error("integer_atoms requires a lattice-tagged measure");
    return int_atoms_;
}

std::int64_t SignedMeasure::min_index() const {
    if (empty()) throw std::logic_error("min_index on empty measure");
    return integer_atoms().begin()->first;
}

std::int64_t SignedMeasure::max_index() const {
    if (empty()) throw std::logic_error("max_index on empty measure");
    return integer_atoms().rbegin()->first;
}

SignedMeasure SignedMeasure::as_free() const {
    if (!is_lattice()) return *this;
    return at_points(atoms());
}

SignedMeasure SignedMeasure::operator-() const { return -1.0 * (*this); }

SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b) {
    if (a.is_lattice() && b.is_lattice()) {
        std::int64_t shift = 0;
        if (lattice_compatible(*a.tag_, *b.tag_, shift)) {
            MeasureBuilder out(a.tag_);
            for (const auto& [n, w] : a.int_atoms_) out.add_index(n, w);
            for (const auto& [n, w] : b.int_atoms_) out.add_index(n + shift, w);
            return out.take();
        }
    }
    MeasureBuilder out(std::nullopt);
    for (const auto& [x, w] : a.atoms()) out.add_point(x, w);
    for (const auto& [x, w] : b.atoms()) out.add_point(x, w);
    return out.take();
}

SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b) { return a + (-1.0 * b); }

SignedMeasure operator*(double c, const SignedMeasure& m) {
    MeasureBuilder out(m.tag_);
    if (m.is_lattice())
        for (const auto& [n, w] : m.int_atoms_) out.add_index(n, c * w);
    else
        for (const auto& [x, w] : m.real_atoms_) out.add_point(x, c * w);
    return out.take();
}

Region Region::all() { return interval(-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()); }

Region Region::empty() { return complement_of(-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()); }

Region Region::interval(double lo, double hi) { return Region{lo, hi, false}; }

Region Region::complement_of(double lo, double hi) { return Region{lo, hi, true}; }

Region Region::punctured_line() { return complement_of(0.0, 0.0); }

bool Region::contains(double x) const {
    const bool inside = (x >= lo && x <= hi);
    return complement ? !inside : inside;
}

MeasureDecomposition hahn_jordan(const SignedMeasure& m) {
    const bool lat = m.is_lattice();
    MeasureBuilder pos(m.lattice_tag()), neg(m.lattice_tag()), tv(m.lattice_tag());
    if (lat) {
        for (const auto& [n, w] : m.integer_atoms()) {
            (w > 0 ? pos : neg).add_index(n, std::abs(w));
            tv.add_index(n, std::abs(w));
        }
    } else {
        for (const auto& [x, w] : m.atoms()) {
            (w > 0 ? pos : neg).add_point(x, std::abs(w));
            tv.add_point(x, std::abs(w));
        }
    }
    return MeasureDecomposition{pos.take(), neg.take(), tv.take()};
}

SignedMeasure convolve(const SignedMeasure& a, const SignedMeasure& b) {
    if (a.is_lattice() && b.is_lattice()) {
        const LatticeTag& ta = *a.lattice_tag();
        const LatticeTag& tb = *b.lattice_tag();
        if (std::abs(ta.spacing - tb.spacing) <= 1e-12 * std::max(ta.spacing, tb.spacing)) {
            MeasureBuilder out(LatticeTag{ta.offset + tb.offset, ta.spacing});
            for (const auto& [n, wn] : a.integer_atoms())
                for (const auto& [m, wm] : b.integer_atoms()) out.add_index(n + m, wn * wm);
            return out.take();
        }
    }
    MeasureBuilder out(std::nullopt);
    const auto aa = a.atoms();
    const auto bb = b.atoms();
    for (const auto& [x, wx] : aa)
        for (const auto& [y, wy] : bb) out.add_point(x + y, wx * wy);
    return out.take();
}

SignedMeasure convolve_power(const SignedMeasure& m, std::uint64_t power) {
    if (power == 0) throw std::invalid_argument("convolve_power requires power >= 1");
    SignedMeasure square = m;
    std::optional<SignedMeasure> acc;
    while (power > 0) {
        if (power & 1u) acc = acc ? convolve(*acc, square) : square;
        power >>= 1u;
        if (power > 0) square = convolve(square, square);
    }
    return *acc;
}

ExpMeasureResult exp_measure(const SignedMeasure& m, double tail_tol) {
    if (!(tail_tol > 0.0)) throw std::invalid_argument("exp_measure requires tail_tol > 0");
    const double total = m.total_variation();

    // Crude remainder bound: sum_{n>N} T^n/n! <= e^T T^{N+1}/(N+1)!.
    int terms = 0;
    double factor = total;  // T^{N+1}/(N+1)! at N = terms
    const double scale = std::exp(total);
    while (scale * factor >= tail_tol) {
        ++terms;
        factor *= total / static_cast<double>(terms + 1);
        if (terms > 4000) throw std::invalid_argument("exp_measure: series does not reach tail_tol");
    }

    // delta_0 on the measure's own lattice when the offset allows it; the
    // powers m^{*n} stay on a common lattice only when the offset is 0.
    std::optional<LatticeTag> tag;
    if (m.is_lattice() && std::abs(m.lattice_tag()->offset) <= kLocationMergeTol)
        tag = LatticeTag{0.0, m.lattice_tag()->spacing};

    SignedMeasure identity = tag ? SignedMeasure::on_lattice(*tag, {{0, 1.0}}) : SignedMeasure::dirac(0.0, 1.0);
    SignedMeasure base = (tag || !m.is_lattice()) ? m : m.as_free();

    SignedMeasure acc = identity;
    SignedMeasure term = identity;
    for (int n = 1; n <= terms; ++n) {
        term = (1.0 / static_cast<double>(n)) * convolve(term, base);
        acc = acc + term;
    }
    return ExpMeasureResult{acc, terms, scale * factor};
}

std::complex<double> fourier_eval(const SignedMeasure& m, double z) {
    std::complex<double> s{0.0, 0.0};
    for (const auto& [x, w] : m.atoms()) s += w * std::exp(std::complex<double>(0.0, z * x));
    return s;
}

double l1_distance(const SignedMeasure& a, const SignedMeasure& b) {
    if (a.is_lattice() && b.is_lattice()) {
        std::int64_t shift = 0;
        if (lattice_compatible(*a.lattice_tag(), *b.lattice_tag(), shift)) {
            double s = 0.0;
            auto ia = a.integer_atoms().begin();
            auto ib = b.integer_atoms().begin();
            const auto ea = a.integer_atoms().end();
            const auto eb = b.integer_atoms().end();
            while (ia != ea || ib != eb) {
                if (ib == eb || (ia != ea && ia->first < ib->first + shift)) {
                    s += std::abs(ia->second);
                    ++ia;
                } else if (ia == ea || ib->first + shift < ia->first) {
                    s += std::abs(ib->second);
                    ++ib;
                } else {
                    s += std::abs(ia->second - ib->second);
                    ++ia;
                    ++ib;
                }
            }
            return s;
        }
    }
    const auto aa = a.atoms();
    const auto bb = b.atoms();
    double s = 0.0;
    std::size_t i = 0, j = 0;
    while (i < aa.size() || j < bb.size()) {
        if (j == bb.size() || (i < aa.size() && aa[i].first < bb[j].first - kLocationMergeTol)) {
            s += std::abs(aa[i].second);
            ++i;
        } else if (i == aa.size() || bb[j].first < aa[i].first - kLocationMergeTol) {
            s += std::abs(bb[j].second);
            ++j;
        } else {
            s += std::abs(aa[i].second - bb[j].second);
            ++i;
            ++j;
        }
    }
    return s;
}

SignedMeasure restrict(const SignedMeasure& m, const Region& region) {
    MeasureBuilder out(m.lattice_tag());
    if (m.is_lattice()) {
        for (const auto& [n, w] : m.integer_atoms())
            if (region.contains(m.location_of_index(n))) out.add_index(n, w);
    } else {
        for (const auto& [x, w] : m.atoms())
            if (region.contains(x)) out.add_point(x, w);
    }
    return out.take();
}

}  // namespace qid
