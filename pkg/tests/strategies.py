from hypothesis import strategies as st

from fairsum.instance import Instance, Kind


@st.composite
def instances(draw, kind=None, agents=2, max_items=12, max_capacity=60):
    """Small instances the oracle can enumerate quickly."""
    if kind is None:
        kind = draw(st.sampled_from([Kind.SEPARATE, Kind.SHARED]))
    capacity = draw(st.integers(1, max_capacity))
    weight = st.integers(0, capacity)
    if kind is Kind.SHARED:
        count = min(max_items, 8 if agents == 2 else 6)
        items = (tuple(draw(st.lists(weight, max_size=count))),)
    else:
        per_agent = max_items // agents
        items = tuple(
            tuple(draw(st.lists(weight, max_size=per_agent))) for _ in range(agents)
        )
    return Instance(kind, capacity, items, agents, label="hypothesis")


def utility_vectors(k=2, max_value=60):
    return st.lists(st.integers(1, max_value), min_size=k, max_size=k).map(tuple)
