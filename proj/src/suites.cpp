#include "bfgp/suites.hpp"

#include "bfgp/problem_io.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace bfgp {

namespace {

// Fixed-sequence generator; std::mt19937 output is pinned by the standard,
// unlike the library distributions.
class Rng {
public:
    Rng(const std::string &domain, int size) : engine_(seed_for(domain, size)) {}
    int uniform(int lo, int hi) {
        return lo + static_cast<int>(engine_() % static_cast<std::uint32_t>(hi - lo + 1));
    }

private:
    static std::uint32_t seed_for(const std::string &domain, int size) {
        std::uint32_t h = 2166136261u;
        for (char c : domain)
            h = (h ^ static_cast<unsigned char>(c)) * 16777619u;
        return h ^ (static_cast<std::uint32_t>(size) * 2654435761u);
    }
    std::mt19937 engine_;
};

std::string name_of(const std::string &prefix, int i) { return prefix + std::to_string(i); }

std::string offset_name(const std::string &prefix, int dr, int dc) {
    auto part = [](int d) { return (d < 0 ? "n" : "p") + std::to_string(d < 0 ? -d : d); };
    return prefix + "_" + part(dr) + "_" + part(dc);
}

std::string join(const std::vector<std::string> &items, const char *sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i)
        out += (i ? sep : "") + items[i];
    return out.empty() ? "-" : out;
}

int max_size(const std::vector<int> &sizes) { return *std::max_element(sizes.begin(), sizes.end()); }

// Effects that shift x0..x(count-1) one place towards index 0, filling the
// last cell with `fill`.
std::vector<std::string> shift_down(const std::string &prefix, int count, const std::string &fill) {
    std::vector<std::string> effects;
    for (int i = 0; i < count; ++i)
        effects.push_back(name_of(prefix, i) + ":=" +
                          (i + 1 < count ? name_of(prefix, i + 1) : fill));
    return effects;
}

std::string gen_triangular_sum(const std::vector<int> &sizes) {
    const int k_max = max_size(sizes);
    std::ostringstream out;
    out << "domain triangular-sum\n"
        << "var c int " << k_max << "\n"
        << "var acc int " << k_max * (k_max + 1) / 2 << "\n"
        << "action accumulate guard - effects acc:=acc+c\n"
        << "action decrement guard c>0 effects c:=c-1\n"
        << "atom c=0\natom c>0\n";
    for (int k : sizes) {
        out << "instance k=" << k << "\n"
            << "init c=" << k << " acc=0\n"
            << "goal acc=" << k * (k + 1) / 2 << " c=0\n";
    }
    return out.str();
}

long fib(int k) {
    long a = 0, b = 1;
    for (int i = 0; i < k; ++i) {
        const long next = a + b;
        a = b;
        b = next;
    }
    return a;
}

std::string gen_fibonacci(const std::vector<int> &sizes) {
    const int k_max = max_size(sizes);
    const long bound = fib(k_max + 1);
    std::ostringstream out;
    out << "domain fibonacci\n"
        << "var a int " << bound << "\nvar b int " << bound << "\nvar n int " << k_max << "\n"
        << "action add guard - effects a:=a+b\n"
        << "action swap guard - effects a:=b,b:=a\n"
        << "action dec guard n>0 effects n:=n-1\n"
        << "atom n=0\natom n>0\n";
    for (int k : sizes) {
        out << "instance k=" << k << "\n"
            << "init a=0 b=1 n=" << k << "\n"
            << "goal a=" << fib(k) << " n=0\n";
    }
    return out.str();
}

/*
  A read-once tape: `cur` is the cell under the head, r0.. the unread cells,
  0 marks blank. `next` consumes one cell.
*/
void tape_vars(std::ostringstream &out, int length, int values) {
    out << "var cur int " << values << "\n";
    for (int i = 0; i + 1 < length; ++i)
        out << "var " << name_of("r", i) << " int " << values << "\n";
}

std::vector<std::string> tape_advance(int length) {
    if (length == 1)
        return {"cur:=0"};
    std::vector<std::string> effects{"cur:=r0"};
    for (const auto &e : shift_down("r", length - 1, "0"))
        effects.push_back(e);
    return effects;
}

std::string tape_init(const std::vector<int> &cells, int length) {
    std::ostringstream out;
    out << "cur=" << cells[0];
    for (int i = 0; i + 1 < length; ++i)
        out << ' ' << name_of("r", i) << '=' << (i + 1 < static_cast<int>(cells.size()) ? cells[i + 1] : 0);
    return out.str();
}

std::string gen_find(const std::vector<int> &sizes) {
    constexpr int kValues = 3;
    const int m_max = max_size(sizes);
    std::ostringstream out;
    out << "domain find\n";
    tape_vars(out, m_max, kValues);
    out << "var tgt int " << kValues << "\nvar cnt int " << m_max << "\n"
        << "action next guard cur>0 effects " << join(tape_advance(m_max)) << "\n"
        << "action count guard - effects cnt:=cnt+1\n"
        << "atom cur=tgt\natom cur=0\n";
    for (int m : sizes) {
        Rng rng("find", m);
        std::vector<int> cells(m);
        for (int &c : cells)
            c = rng.uniform(1, kValues);
        const int target = rng.uniform(1, kValues);
        const auto occurrences = std::count(cells.begin(), cells.end(), target);
        out << "instance length=" << m << " target=" << target << "\n"
            << "init " << tape_init(cells, m_max) << " tgt=" << target << " cnt=0\n"
            << "goal cnt=" << occurrences << "\n";
    }
    return out.str();
}

std::string gen_reverse(const std::vector<int> &sizes) {
    constexpr int kValues = 5;
    const int m_max = max_size(sizes);
    std::ostringstream out;
    out << "domain reverse\n";
    for (int i = 0; i < m_max; ++i)
        out << "var " << name_of("in", i) << " int " << kValues << "\n";
    for (int i = 0; i < m_max; ++i)
        out << "var " << name_of("out", i) << " int " << kValues << "\n";
    // Pop the input stack and push onto the output stack.
    std::vector<std::string> transfer{"out0:=in0"};
    for (int i = 1; i < m_max; ++i)
        transfer.push_back(name_of("out", i) + ":=" + name_of("out", i - 1));
    for (const auto &e : shift_down("in", m_max, "0"))
        transfer.push_back(e);
    out << "action transfer guard in0>0 effects " << join(transfer) << "\n"
        << "action discard guard in0>0 effects " << join(shift_down("in", m_max, "0")) << "\n"
        << "atom in0=0\natom in0>0\n";
    for (int m : sizes) {
        Rng rng("reverse", m);
        std::vector<int> cells(m);
        for (int &c : cells)
            c = rng.uniform(1, kValues);
        out << "instance length=" << m << "\ninit";
        for (int i = 0; i < m_max; ++i)
            out << ' ' << name_of("in", i) << '=' << (i < m ? cells[i] : 0);
        for (int i = 0; i < m_max; ++i)
            out << ' ' << name_of("out", i) << "=0";
        out << "\ngoal";
        for (int i = 0; i < m_max; ++i)
            out << ' ' << name_of("in", i) << "=0";
        for (int i = 0; i < m_max; ++i)
            out << ' ' << name_of("out", i) << '=' << (i < m ? cells[m - 1 - i] : 0);
        out << "\n";
    }
    return out.str();
}

std::string gen_select(const std::vector<int> &sizes) {
    constexpr int kValues = 6;
    const int m_max = max_size(sizes);
    std::ostringstream out;
    out << "domain select\n";
    tape_vars(out, m_max, kValues);
    out << "var idx int " << m_max << "\nvar best int " << kValues + 1 << "\nvar bidx int " << m_max
        << "\n";
    auto advance = tape_advance(m_max);
    advance.push_back("idx:=idx+1");
    out << "action next guard cur>0 effects " << join(advance) << "\n"
        << "action take guard - effects best:=cur,bidx:=idx\n"
        << "atom cur<best\natom cur=0\n";
    for (int m : sizes) {
        Rng rng("select", m);
        std::vector<int> cells(m);
        for (int &c : cells)
            c = rng.uniform(1, kValues);
        const auto min_it = std::min_element(cells.begin(), cells.end());
        out << "instance length=" << m << "\n"
            << "init " << tape_init(cells, m_max) << " idx=0 best=" << kValues + 1 << " bidx=0\n"
            << "goal best=" << *min_it << " bidx=" << (min_it - cells.begin()) << "\n";
    }
    return out.str();
}

/*
  A ring r0..rM holding a 0 marker and M values; the window is (r0, r1).
  Each full turn of M+1 rotations is one bubble pass; `c` budgets M-1
  passes so the marker ends back at r0.
*/
std::string gen_sorting(const std::vector<int> &sizes) {
    constexpr int kValues = 5;
    const int m_max = max_size(sizes);
    const int turns = (m_max + 1) * (m_max - 1);
    std::ostringstream out;
    out << "domain sorting\n";
    for (int i = 0; i <= m_max; ++i)
        out << "var " << name_of("r", i) << " int " << kValues << "\n";
    out << "var c int " << turns << "\n";
    std::vector<std::string> rotate;
    for (int i = 0; i <= m_max; ++i)
        rotate.push_back(name_of("r", i) + ":=" + name_of("r", i < m_max ? i + 1 : 0));
    rotate.push_back("c:=c-1");
    out << "action swap guard r1<r0,r1>0 effects r0:=r1,r1:=r0\n"
        << "action rotate guard c>0 effects " << join(rotate) << "\n"
        << "atom r1<r0\natom r1>0\natom c=0\n";
    for (int m : sizes) {
        Rng rng("sorting", m);
        std::vector<int> cells(m_max, kValues);  // shorter inputs are padded with the top value
        for (int i = 0; i < m; ++i)
            cells[i] = rng.uniform(1, kValues);
        std::vector<int> sorted = cells;
        std::sort(sorted.begin(), sorted.end());
        out << "instance length=" << m << "\ninit r0=0";
        for (int i = 0; i < m_max; ++i)
            out << ' ' << name_of("r", i + 1) << '=' << cells[i];
        out << " c=" << turns << "\ngoal r0=0";
        for (int i = 0; i < m_max; ++i)
            out << ' ' << name_of("r", i + 1) << '=' << sorted[i];
        out << " c=0\n";
    }
    return out.str();
}

/*
  Corridor seen from the agent: tr<d>/tl<d> mark the target d cells to the
  right/left, at marks the target under the agent, er<d>/el<d> mark existing
  cells. goal_right is a static hint giving the initial direction.
*/
std::string gen_corridor(const std::vector<int> &sizes) {
    const int reach = max_size(sizes) - 1;
    std::ostringstream out;
    out << "domain corridor\nvar at bool\n";
    for (const char *p : {"tr", "tl", "er", "el"})
        for (int d = 1; d <= reach; ++d)
            out << "var " << name_of(p, d) << " bool\n";
    out << "var goal_right bool\n";

    auto move = [&](const std::string &ahead_t, const std::string &behind_t, const std::string &ahead_e,
                    const std::string &behind_e) {
        std::vector<std::string> e;
        e.push_back("at:=" + name_of(ahead_t, 1));
        for (int d = 1; d <= reach; ++d) {
            e.push_back(name_of(ahead_t, d) + ":=" + (d < reach ? name_of(ahead_t, d + 1) : "0"));
            e.push_back(name_of(behind_t, d) + ":=" + (d == 1 ? "at" : name_of(behind_t, d - 1)));
        }
        for (int d = 1; d <= reach; ++d) {
            e.push_back(name_of(ahead_e, d) + ":=" + (d < reach ? name_of(ahead_e, d + 1) : "0"));
            e.push_back(name_of(behind_e, d) + ":=" + (d == 1 ? "1" : name_of(behind_e, d - 1)));
        }
        return join(e);
    };
    out << "action right guard er1 effects " << move("tr", "tl", "er", "el") << "\n"
        << "action left guard el1 effects " << move("tl", "tr", "el", "er") << "\n"
        << "atom at\natom goal_right\n";

    int index = 0;
    for (int length : sizes) {
        Rng rng("corridor", length * 100 + index);
        int start = rng.uniform(0, length - 1);
        int target = rng.uniform(0, length - 2);
        if (target >= start)
            ++target;
        out << "instance length=" << length << " start=" << start << " target=" << target << "\ninit";
        out << " at=0";
        for (int d = 1; d <= reach; ++d)
            out << ' ' << name_of("tr", d) << '=' << (start + d == target ? 1 : 0);
        for (int d = 1; d <= reach; ++d)
            out << ' ' << name_of("tl", d) << '=' << (start - d == target ? 1 : 0);
        for (int d = 1; d <= reach; ++d)
            out << ' ' << name_of("er", d) << '=' << (start + d < length ? 1 : 0);
        for (int d = 1; d <= reach; ++d)
            out << ' ' << name_of("el", d) << '=' << (start - d >= 0 ? 1 : 0);
        out << " goal_right=" << (target > start ? 1 : 0) << "\ngoal at=1\n";
        ++index;
    }
    return out.str();
}

/*
  Counters in thermometer form: <x>g<k> holds x >= k and <x>l<k> holds
  x < k, so zero and positive tests are both plain boolean atoms.
*/
void counter_vars(std::ostringstream &out, const std::string &x, int max) {
    for (int k = 1; k <= max; ++k)
        out << "var " << x << 'g' << k << " bool\nvar " << x << 'l' << k << " bool\n";
}

std::vector<std::string> counter_step(const std::string &x, int max, bool up) {
    std::vector<std::string> e;
    for (int k = 1; k <= max; ++k) {
        const std::string g = x + 'g' + std::to_string(k), l = x + 'l' + std::to_string(k);
        if (up) {
            e.push_back(g + ":=" + (k == 1 ? "1" : x + 'g' + std::to_string(k - 1)));
            e.push_back(l + ":=" + (k == 1 ? "0" : x + 'l' + std::to_string(k - 1)));
        } else {
            e.push_back(g + ":=" + (k == max ? "0" : x + 'g' + std::to_string(k + 1)));
            e.push_back(l + ":=" + (k == max ? "1" : x + 'l' + std::to_string(k + 1)));
        }
    }
    return e;
}

std::string counter_values(const std::string &x, int max, int value) {
    std::ostringstream out;
    for (int k = 1; k <= max; ++k)
        out << ' ' << x << 'g' << k << '=' << (value >= k) << ' ' << x << 'l' << k << '='
            << (value < k);
    return out.str();
}

std::string gen_gripper(const std::vector<int> &sizes) {
    constexpr int kCapacity = 2;
    const int n_max = max_size(sizes);
    std::ostringstream out;
    out << "domain gripper\n";
    counter_vars(out, "a", n_max);
    counter_vars(out, "b", n_max);
    counter_vars(out, "h", kCapacity);
    out << "var at_a bool\nvar at_b bool\n";
    auto pick = counter_step("a", n_max, false);
    for (const auto &e : counter_step("h", kCapacity, true))
        pick.push_back(e);
    auto drop = counter_step("b", n_max, true);
    for (const auto &e : counter_step("h", kCapacity, false))
        drop.push_back(e);
    out << "action pick guard at_a,ag1,hl" << kCapacity << " effects " << join(pick) << "\n"
        << "action drop guard at_b,hg1 effects " << join(drop) << "\n"
        << "action move guard - effects at_a:=at_b,at_b:=at_a\n"
        << "atom al1\natom ag1\natom hl1\natom at_a\n";
    for (int n : sizes) {
        out << "instance balls=" << n << "\n"
            << "init" << counter_values("a", n_max, n) << counter_values("b", n_max, 0)
            << counter_values("h", kCapacity, 0) << " at_a=1 at_b=0\n"
            << "goal" << counter_values("a", n_max, 0) << counter_values("b", n_max, n)
            << counter_values("h", kCapacity, 0) << "\n";
    }
    return out.str();
}

/*
  2 x C grid seen from the agent. For every offset in the window:
  u (existing and unvisited), e (exists) and ne (does not exist).
*/
std::string gen_visitall(const std::vector<int> &sizes) {
    constexpr int kRows = 2;
    const int c_max = max_size(sizes);
    const int rr = kRows - 1;
    const int cr = c_max - 1;
    std::ostringstream out;
    out << "domain visitall\n";
    for (const char *p : {"u", "e", "ne"})
        for (int dr = -rr; dr <= rr; ++dr)
            for (int dc = -cr; dc <= cr; ++dc)
                out << "var " << offset_name(p, dr, dc) << " bool\n";

    struct Dir {
        const char *name;
        int dr, dc;
    };
    const Dir dirs[] = {{"right", 0, 1}, {"left", 0, -1}, {"down", 1, 0}, {"up", -1, 0}};
    for (const Dir &d : dirs) {
        std::vector<std::string> effects;
        for (const char *p : {"u", "e", "ne"}) {
            const std::string outside = std::string(p) == "ne" ? "1" : "0";
            for (int dr = -rr; dr <= rr; ++dr) {
                for (int dc = -cr; dc <= cr; ++dc) {
                    const std::string target = offset_name(p, dr, dc);
                    if (std::string(p) == "u" && dr == 0 && dc == 0) {
                        effects.push_back(target + ":=0");
                        continue;
                    }
                    const int sr = dr + d.dr, sc = dc + d.dc;
                    const bool inside = sr >= -rr && sr <= rr && sc >= -cr && sc <= cr;
                    effects.push_back(target + ":=" + (inside ? offset_name(p, sr, sc) : outside));
                }
            }
        }
        out << "action " << d.name << " guard " << offset_name("e", d.dr, d.dc) << " effects "
            << join(effects) << "\n";
    }
    for (const Dir &d : dirs)
        out << "atom " << offset_name("ne", d.dr, d.dc) << "\n";

    for (int cols : sizes) {
        out << "instance rows=" << kRows << " cols=" << cols << "\ninit";
        for (const char *p : {"u", "e", "ne"}) {
            for (int dr = -rr; dr <= rr; ++dr) {
                for (int dc = -cr; dc <= cr; ++dc) {
                    const bool exists = dr >= 0 && dr < kRows && dc >= 0 && dc < cols;
                    bool v = exists;
                    if (std::string(p) == "u")
                        v = exists && !(dr == 0 && dc == 0);
                    else if (std::string(p) == "ne")
                        v = !exists;
                    out << ' ' << offset_name(p, dr, dc) << '=' << (v ? 1 : 0);
                }
            }
        }
        out << "\ngoal";
        for (int dr = -rr; dr <= rr; ++dr)
            for (int dc = -cr; dc <= cr; ++dc)
                out << ' ' << offset_name("u", dr, dc) << "=0";
        out << "\n";
    }
    return out.str();
}

struct Entry {
    SuiteInfo info;
    std::function<std::string(const std::vector<int> &)> generate;
};

const std::vector<Entry> &entries() {
    static const std::vector<Entry> table = {
        {{"corridor", true, {3, 4, 5, 6}, 6, 8, 2, 24,
          "move along a corridor to a target cell"},
         gen_corridor},
        {{"gripper", true, {2, 3, 4, 5}, 6, 8, 1, 30, "carry every ball from room A to room B"},
         gen_gripper},
        {{"visitall", true, {2, 3, 4, 5}, 5, 8, 2, 12, "visit every cell of a 2-row grid"},
         gen_visitall},
        {{"fibonacci", false, {5, 6, 7, 8}, 5, 4, 0, 40, "compute the k-th Fibonacci number"},
         gen_fibonacci},
        {{"find", false, {3, 4, 5, 6, 7}, 5, 4, 1, 40, "count occurrences of a target value"},
         gen_find},
        {{"reverse", false, {3, 4, 5}, 3, 2, 1, 40, "reverse a sequence"}, gen_reverse},
        {{"select", false, {3, 4, 5, 6}, 5, 4, 1, 40, "select the minimum and its index"},
         gen_select},
        {{"sorting", false, {2, 3, 4}, 6, 8, 2, 12, "sort a sequence"}, gen_sorting},
        {{"triangular-sum", false, {2, 3, 4, 5, 6}, 4, 2, 0, 200, "compute 1 + 2 + ... + k"},
         gen_triangular_sum},
    };
    return table;
}

const Entry &entry(const std::string &name) {
    for (const Entry &e : entries()) {
        if (e.info.name == name)
            return e;
    }
    throw std::invalid_argument("unknown domain '" + name + "'");
}

}  // namespace

const std::vector<SuiteInfo> &suite_registry() {
    static const std::vector<SuiteInfo> infos = [] {
        std::vector<SuiteInfo> out;
        for (const Entry &e : entries())
            out.push_back(e.info);
        return out;
    }();
    return infos;
}

const SuiteInfo &suite_info(const std::string &name) { return entry(name).info; }

SuiteSpec default_suite(const std::string &name) {
    const SuiteInfo &info = suite_info(name);
    return SuiteSpec{info.name, info.default_sizes, info.n_lines};
}

std::size_t suite_lines(const SuiteSpec &spec) {
    return spec.n_lines ? spec.n_lines : suite_info(spec.domain_name).n_lines;
}

ProblemSet generate_suite(const SuiteSpec &spec) {
    const Entry &e = entry(spec.domain_name);
    if (spec.sizes.empty())
        throw std::invalid_argument("suite '" + spec.domain_name + "' needs at least one size");
    for (int s : spec.sizes) {
        if (s < e.info.min_size || s > e.info.max_size)
            throw std::invalid_argument("size " + std::to_string(s) + " outside [" +
                                        std::to_string(e.info.min_size) + "," +
                                        std::to_string(e.info.max_size) + "] for '" +
                                        spec.domain_name + "'");
    }
    return parse_problem_set_text(e.generate(spec.sizes));
}

}  // namespace bfgp
