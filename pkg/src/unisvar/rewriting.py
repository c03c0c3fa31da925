"""The bounden quiver algebra as a length-truncated rewriting system.

The ideal generated by the user relations together with all paths of length
N is completed to a confluent rewriting system under the length-then-lex
path order.  Truncation makes completion terminate: every path of length at
least N is reducible, so rule leading terms range over the finitely many
paths of length at most N.  Normal forms of paths of length < N form the
distinguished basis of the quotient algebra.
"""

from collections import deque

from .errors import UnisvarError
from .linalg import identity, rref
from .quiver import AlgebraElement, PathWord

COMPLETION_LIMIT = 20000


class ReductionError(UnisvarError):
    pass


def _contains(word, factor):
    """Leftmost offset of factor as a contiguous subword, or None."""
    n, k = len(word), len(factor)
    if k == 0 or k > n:
        return None
    for i in range(n - k + 1):
        if word[i : i + k] == factor:
            return i
    return None


def _overlaps(left, right):
    """Proper overlap words between two leading terms.

    Yields (word, offset_left, offset_right) where ``word`` carries an
    application of the left rule at offset_left and of the right rule at
    offset_right, with a nonempty proper suffix of left equal to a prefix
    of right.
    """
    la, ra = left.arrows, right.arrows
    for k in range(1, min(len(la), len(ra))):
        if la[-k:] == ra[:k]:
            yield la + ra[k:], 0, len(la) - k


class ReductionSystem:
    """A confluent presentation of Lambda = KGamma/(I + J^N)."""

    def __init__(self, quiver, relations, nilbound, field):
        if nilbound < 2:
            raise ReductionError("nilpotency bound must be at least 2")
        declared = {arrow.name for arrow in quiver.arrows}
        for rel in relations:
            if rel.field != field:
                raise ReductionError("relation over the wrong field")
            for path in rel.paths():
                for name in path.arrows:
                    if name not in declared:
                        raise ReductionError(
                            f"relation mentions undeclared arrow {name}"
                        )
            if not rel.is_uniform():
                raise ReductionError(
                    f"relation {rel.text()} is not uniform (mixed endpoints)"
                )
        self.quiver = quiver
        self.field = field
        self.nilbound = nilbound
        self.relations = tuple(rel for rel in relations if not rel.is_zero())
        self.rules = {}
        self._rule_order = []
        self._nf_path_cache = {}
        self._radical_cache = {}
        self._complete()
        self._build_bases()
        self._verify()

    # -- construction ----------------------------------------------------

    def _complete(self):
        field = self.field
        queue = deque(self.relations)
        for path in self.paths_of_length(self.nilbound):
            queue.append(AlgebraElement.from_path(field, path))
        additions = 0
        while True:
            while queue:
                elem = self.normal_form(queue.popleft())
                if elem.is_zero():
                    continue
                lead = elem.leading_path()
                if lead.length == 0:
                    raise ReductionError(
                        "a vertex idempotent rewrites to zero; "
                        "the relation ideal is not admissible"
                    )
                inv = field.inv(elem.terms[lead])
                tail = {
                    p: field.neg(field.mul(inv, c))
                    for p, c in elem.terms.items()
                    if p != lead
                }
                # Existing rules whose leading term contains the new one
                # become redundant; recycle them through the queue.
                stale = [
                    other
                    for other in self.rules
                    if other != lead
                    and _contains(other.arrows, lead.arrows) is not None
                ]
                for other in stale:
                    old_tail = self.rules.pop(other)
                    requeued = AlgebraElement(field, {other: field.one})
                    requeued = requeued - AlgebraElement(field, old_tail)
                    queue.append(requeued)
                self.rules[lead] = tail
                self._rule_order = sorted(
                    self.rules, key=PathWord.order_key, reverse=True
                )
                self._nf_path_cache.clear()
                additions += 1
                if additions > COMPLETION_LIMIT:
                    raise ReductionError("completion did not terminate")
            unresolved = self._critical_differences()
            if not unresolved:
                break
            queue.extend(unresolved)
        # Fully reduce the stored tails so the system is inter-reduced.
        changed = True
        while changed:
            changed = False
            for lead in list(self.rules):
                tail = AlgebraElement(self.field, self.rules[lead])
                nf = self.normal_form(tail)
                if nf.terms != self.rules[lead]:
                    self.rules[lead] = dict(nf.terms)
                    changed = True
                    self._nf_path_cache.clear()

    def _apply_rule_in_word(self, word_path, lead, tail, offset):
        """The element obtained by rewriting lead -> tail inside word_path."""
        field = self.field
        pre = word_path.arrows[:offset]
        post = word_path.arrows[offset + len(lead.arrows) :]
        terms = {}
        for tpath, coeff in tail.items():
            new = PathWord(
                word_path.source, word_path.target, pre + tpath.arrows + post
            )
            c = field.add(terms.get(new, field.zero), coeff)
            if field.is_zero(c):
                terms.pop(new, None)
            else:
                terms[new] = c
        return AlgebraElement(field, terms)

    def _critical_differences(self):
        """Normal forms of all unresolved critical pairs of the rule set."""
        out = []
        items = sorted(self.rules.items(), key=lambda kv: kv[0].order_key())
        for lead1, tail1 in items:
            for lead2, tail2 in items:
                for arrows, off1, off2 in _overlaps(lead1, lead2):
                    word = PathWord(lead1.source, lead2.target, arrows)
                    via1 = self._apply_rule_in_word(word, lead1, tail1, off1)
                    via2 = self._apply_rule_in_word(word, lead2, tail2, off2)
                    diff = self.normal_form(via1 - via2)
                    if not diff.is_zero():
                        out.append(diff)
        return out

    def _build_bases(self):
        self._basis = {}
        self._basis_index = {}
        for v in self.quiver.vertices:
            found = [self.quiver.trivial_path(v)]
            frontier = [self.quiver.trivial_path(v)]
            for _ in range(self.nilbound - 1):
                nxt = []
                for path in frontier:
                    for arrow in self.quiver.arrows_from(path.target):
                        extended = self.quiver.extend(path, arrow)
                        if self._has_rule_suffix(extended.arrows):
                            continue
                        nxt.append(extended)
                found.extend(nxt)
                frontier = nxt
            found.sort(key=PathWord.order_key)
            self._basis[v] = tuple(found)
            self._basis_index[v] = {p: i for i, p in enumerate(found)}
        self.dims = {v: len(self._basis[v]) for v in self.quiver.vertices}
        self.dim_total = sum(self.dims.values())

    def _has_rule_suffix(self, arrows):
        for lead in self.rules:
            k = len(lead.arrows)
            if 0 < k <= len(arrows) and arrows[-k:] == lead.arrows:
                return True
        return False

    def _verify(self):
        for rel in self.relations:
            if not self.normal_form(rel).is_zero():
                raise ReductionError("completed system does not kill a relation")
        for path in self.paths_of_length(self.nilbound):
            if not self.normal_form_path(path).is_zero():
                raise ReductionError("a length-N path has nonzero normal form")
        failures = self.confluence_failures()
        if failures:
            raise ReductionError(
                f"completion left {len(failures)} unresolved overlaps"
            )

    # -- rewriting --------------------------------------------------------

    def normal_form(self, elem):
        """The unique fixed point of the rewrite rules; zero is the empty sum."""
        field = self.field
        work = dict(elem.terms)
        while True:
            target = rule_lead = offset = None
            for path in sorted(work, key=PathWord.order_key, reverse=True):
                for lead in self._rule_order:
                    pos = _contains(path.arrows, lead.arrows)
                    if pos is not None:
                        target, rule_lead, offset = path, lead, pos
                        break
                if target is not None:
                    break
            if target is None:
                return AlgebraElement(field, work)
            coeff = work.pop(target)
            replaced = self._apply_rule_in_word(
                target, rule_lead, self.rules[rule_lead], offset
            )
            for path, c in replaced.terms.items():
                total = field.add(work.get(path, field.zero), field.mul(coeff, c))
                if field.is_zero(total):
                    work.pop(path, None)
                else:
                    work[path] = total

    def normal_form_path(self, path):
        cached = self._nf_path_cache.get(path)
        if cached is None:
            cached = self.normal_form(AlgebraElement.from_path(self.field, path))
            self._nf_path_cache[path] = cached
        return cached

    def multiply(self, x, y):
        """The product 'x after y' in normal form."""
        field = self.field
        terms = {}
        for px, cx in x.terms.items():
            for py, cy in y.terms.items():
                prod = self.quiver.compose(px, py)
                if prod is None:
                    continue
                c = field.add(terms.get(prod, field.zero), field.mul(cx, cy))
                if field.is_zero(c):
                    terms.pop(prod, None)
                else:
                    terms[prod] = c
        return self.normal_form(AlgebraElement(field, terms))

    def left_multiply_arrow(self, arrow, elem):
        """Normal form of arrow . elem (arrow after elem)."""
        field = self.field
        terms = {}
        for path, coeff in elem.terms.items():
            extended = self.quiver.extend(path, arrow)
            if extended is not None:
                terms[extended] = coeff
        return self.normal_form(AlgebraElement(field, terms))

    def left_multiply_idempotent(self, vertex, elem):
        return AlgebraElement(
            self.field,
            {p: c for p, c in elem.terms.items() if p.target == vertex},
        )

    def path_in_ideal(self, path):
        return self.normal_form_path(path).is_zero()

    # -- the distinguished basis ------------------------------------------

    def left_module_basis(self, vertex):
        """Irreducible paths with the given source, in (length, lex) order.

        This is the fixed coordinate basis of Lambda.e used by every
        subspace computation downstream.
        """
        try:
            return self._basis[vertex]
        except KeyError:
            raise ReductionError(f"unknown vertex {vertex}") from None

    def vector_of(self, elem, vertex):
        """Coordinates of a normal-form element over the basis of Lambda.e."""
        index = self._basis_index[vertex]
        coords = [self.field.zero] * len(index)
        for path, coeff in elem.terms.items():
            if path.source != vertex:
                raise ReductionError(
                    f"element has a path with source {path.source}, not {vertex}"
                )
            slot = index.get(path)
            if slot is None:
                raise ReductionError(
                    f"path {path.text()} is not in normal form"
                )
            coords[slot] = coeff
        return coords

    def element_from_vector(self, coords, vertex):
        basis = self._basis[vertex]
        terms = {
            basis[i]: c
            for i, c in enumerate(coords)
            if not self.field.is_zero(c)
        }
        return AlgebraElement(self.field, terms)

    # -- auxiliary enumeration and checks ----------------------------------

    def paths_of_length(self, n, source=None):
        """All quiver paths of length exactly n (raw, not reduced)."""
        sources = [source] if source is not None else list(self.quiver.vertices)
        level = [self.quiver.trivial_path(v) for v in sources]
        for _ in range(n):
            level = [
                self.quiver.extend(p, a)
                for p in level
                for a in self.quiver.arrows_from(p.target)
            ]
        return sorted(level, key=PathWord.order_key)

    def radical_filtration(self, vertex):
        """rref bases of J^i . Lambda.e, i = 0, 1, ... down to the zero space."""
        cached = self._radical_cache.get(vertex)
        if cached is not None:
            return cached
        field = self.field
        spaces = [rref(field, identity(field, self.dims[vertex]))]
        while spaces[-1][0]:
            rows, _ = spaces[-1]
            image = []
            for row in rows:
                elem = self.element_from_vector(row, vertex)
                for arrow in self.quiver.arrows:
                    product = self.left_multiply_arrow(arrow, elem)
                    if not product.is_zero():
                        image.append(self.vector_of(product, vertex))
            spaces.append(rref(field, image) if image else ([], []))
        self._radical_cache[vertex] = spaces
        return spaces

    def confluence_failures(self):
        """Overlap words whose two one-step reductions disagree in normal form."""
        failures = []
        items = sorted(self.rules.items(), key=lambda kv: kv[0].order_key())
        for lead1, tail1 in items:
            for lead2, tail2 in items:
                for arrows, off1, off2 in _overlaps(lead1, lead2):
                    word = PathWord(lead1.source, lead2.target, arrows)
                    via1 = self.normal_form(
                        self._apply_rule_in_word(word, lead1, tail1, off1)
                    )
                    via2 = self.normal_form(
                        self._apply_rule_in_word(word, lead2, tail2, off2)
                    )
                    if via1 != via2:
                        failures.append(word)
        return failures


def build_reduction_system(quiver, relations, nilbound, field):
    """Complete the relations plus all length-N paths to a confluent system."""
    return ReductionSystem(quiver, relations, nilbound, field)
