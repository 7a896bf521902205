import numpy as np
import pandas as pd
import streamlit as st

from qmut.config import load_settings
from qmut.errors import QuiverError
from qmut.geometry import (
    Form,
    config_to_dict,
    lines_markov_constant,
    min_realization_angle,
    points_to_quiver,
    random_line_config,
    realize_points_from_distances,
    trace_lines,
    trace_points,
)
from qmut.orbit import random_alternating_sequence
from qmut.quiver_core import parse_sequence

WEIGHT_CAP = 1e12

st.header(body="Geometry", divider=True)
st.subheader("Geometric realizations")
st.write(
    "Mutation-cyclic classes are realized by three points of the hyperbolic plane, with weights 2 cosh of "
    "their distances; mutation rotates one point by pi about another. Mutation-acyclic classes are realized "
    "by three lines, and mutation reflects one line across another."
)

settings = load_settings()

tab_a, tab_b, tab_c = st.tabs(["**Try it**", "**Code snippet**", "**Requirements**"])

with tab_a:
    model = st.radio("Model:", ["Points", "Lines"], horizontal=True, key="model")

    try:
        if model == "Points":
            col1, col2, col3 = st.columns(3)
            d12 = col1.number_input("d(a1, a2):", min_value=0.0, value=0.5, key="d12")
            d23 = col2.number_input("d(a2, a3):", min_value=0.0, value=0.5, key="d23")
            d13 = col3.number_input("d(a1, a3):", min_value=0.0, value=0.7, key="d13")
            sequence = parse_sequence(st.text_input("Mutation sequence:", value="1,2,1,2,3", key="sequence"))
            cfg = realize_points_from_distances(d12, d23, d13)
            st.write(f"Realized quiver: `{points_to_quiver(cfg).as_tuple()}`")
            steps = trace_points(cfg, sequence, max_weight=WEIGHT_CAP)
        else:
            form = Form(st.selectbox("Geometry:", [Form.SPHERICAL.value, Form.HYPERBOLIC.value], key="form"))
            col1, col2 = st.columns(2)
            length = col1.number_input("Length:", min_value=0, max_value=10_000, value=200, key="length")
            seed = col2.number_input("Seed:", min_value=0, value=settings.seed, key="seed")
            cfg = random_line_config(np.random.default_rng(int(seed)), form)
            steps = trace_lines(cfg, random_alternating_sequence(int(length), int(seed)), max_weight=WEIGHT_CAP)
    except QuiverError as e:
        st.error(f"Invalid configuration: {e}")
        st.stop()

    frame = pd.DataFrame([step.to_dict() for step in steps])
    col1, col2 = st.columns(2)
    col1.metric("Largest weight", f"{frame[['w12', 'w23', 'w13']].to_numpy().max():.6g}")
    col2.metric("Largest deviation from algebra", f"{frame['deviation'].max():.2e}")
    st.line_chart(frame, x="step", y=["w12", "w23", "w13"])
    st.dataframe(frame, use_container_width=True, hide_index=True)
    with st.expander("Configuration"):
        st.json(config_to_dict(cfg))

    if model == "Lines" and form is Form.SPHERICAL:
        c = lines_markov_constant(cfg)
        if 0 <= c <= 4:
            st.caption(f"C(Q) = {c:.4g}; the angle theta with 2 cos(theta) = sqrt(C) is {min_realization_angle(c):.4g} rad")

with tab_b:
    st.code(
        """
        from qmut.geometry import geom_mutate_points, points_to_quiver, realize_points_from_distances
        from qmut.quiver_core import mutate

        cfg = realize_points_from_distances(0.5, 0.5, 0.7)
        quiver = points_to_quiver(cfg)

        # rotating a1 about a2 matches mutation at vertex 2
        print(points_to_quiver(geom_mutate_points(cfg, 2)), mutate(quiver, 2))
        """
    )

with tab_c:
    col1, col2 = st.columns(2)

    with col1:
        st.markdown("""
                    **Models**
                    * Hyperboloid model of the hyperbolic plane
                    * Unit sphere for spherical lines
                    """)
    with col2:
        st.markdown("""
                    **Dependencies**
                    * [Streamlit](https://pypi.org/project/streamlit/) - `streamlit`
                    * [NumPy](https://pypi.org/project/numpy/) - `numpy`
                    """)
