from view_groups import groups

import streamlit as st

st.markdown(
    """
    <style>
    div[data-testid="stVerticalBlockBorderWrapper"] {
        height: 100%;
        display: flex;
        flex-direction: column;
    }
    div[data-testid="stVerticalBlockBorderWrapper"] > div:first-child {
        height: 100%;
        display: flex;
        flex-direction: column;
        align-items: flex-start;
    }

    div[data-testid="stTooltipHoverTarget"] {
        justify-content: flex-start !important;
    }
    </style>
    """,
    unsafe_allow_html=True,
)

st.markdown(
    """
    **Welcome to the Quiver Mutation Explorer!**

    A rank 3 quiver is written as a signed triple `b12,b23,b13`: a positive `b12` is an arrow 1 -> 2 of
    weight `b12`, a negative one an arrow 2 -> 1. Mutation at a vertex reverses the arrows at that vertex
    and changes the weight of the opposite edge.

    The pages below decide whether a mutation class is bounded, build certified divergent sequences,
    simulate random orbits and realize classes geometrically.
    """
)

st.header("Pages", divider=True)

groups = [group for group in groups if group.get("title")]

cols = st.columns(len(groups))
for col, group in zip(cols, groups):
    with col:
        with st.container(border=True):
            st.markdown(f"**{group['title']}**")
            for view in group["views"]:
                st.page_link(
                    page=view["page"], label=view["label"], help=view["help"]
                )

st.header("Command line", divider=True)
col_a, col_b = st.columns(2)

with col_a:
    st.markdown(
        """
        #### Commands
        - `python -m qmut classify -q "2,2,-2"`
        - `python -m qmut witness -q "2,2,-0.5" --target 1e6`
        - `python -m qmut orbit -q "-0.6,-0.43,0.567" -n 100 --seed 7 --format svg -o orbit.svg`
        """
    )

with col_b:
    st.markdown(
        """
        #### Exit codes
        - `0` bounded or success, `3` unbounded
        - `1` I/O failure, `2` invalid input
        - `4` certificate requested for a bounded class
        """
    )
