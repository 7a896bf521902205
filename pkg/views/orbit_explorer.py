import io
import math

import streamlit as st

from qmut.classifier import classify
from qmut.config import load_settings
from qmut.errors import QuiverError
from qmut.orbit import (
    export_json,
    load_reference_sequences,
    orbit_summary,
    orbit_svg,
    random_alternating_sequence,
    records_frame,
    reference_orbit_names,
    run_orbit,
)
from qmut.quiver_core import parse_triple

MAX_APP_LENGTH = 100_000
CUSTOM = "Random sequence"

st.header(body="Orbits", divider=True)
st.subheader("Explore a mutation orbit")
st.write(
    "Apply a random sequence of mutations, never repeating a vertex twice in a row, and plot the "
    "signed weights of every quiver visited. Reference orbits replay published sequences."
)

settings = load_settings()

tab_a, tab_b, tab_c = st.tabs(["**Try it**", "**Code snippet**", "**Requirements**"])

with tab_a:
    source = st.selectbox("Sequence:", [CUSTOM] + reference_orbit_names(), key="source")

    try:
        if source == CUSTOM:
            quiver_text = st.text_input("Quiver as b12,b23,b13:", value="-0.6,-0.43,0.567", key="quiver")
            length = st.number_input("Length:", min_value=0, max_value=MAX_APP_LENGTH, value=1000, key="length")
            seed = st.number_input("Seed:", min_value=0, value=settings.seed, key="seed")
            triple = parse_triple(quiver_text)
            sequence = random_alternating_sequence(int(length), int(seed))
        else:
            reference = load_reference_sequences(source)
            index = st.selectbox("Published sequence:", range(1, len(reference.sequences) + 1), key="index")
            triple, sequence, seed = reference.quiver, reference.sequences[index - 1], None
        records = list(run_orbit(triple, sequence))
    except QuiverError as e:
        st.error(f"Could not run the orbit: {e}")
        st.stop()

    summary = orbit_summary(records, seed=seed)
    verdict = classify(triple)
    col1, col2, col3 = st.columns(3)
    col1.metric("Largest norm", f"{summary.max_norm:.6g}", help=f"Reached at step {summary.argmax_step}")
    col2.metric("Class", "Bounded" if verdict.bounded else "Unbounded")
    if verdict.norm_bound is not None:
        col3.metric("Norm bound sqrt(C)", f"{verdict.norm_bound:.6g}")
    elif verdict.bounded:
        col3.metric("Markov constant", f"{verdict.markov_c:.6g}")
    else:
        col3.metric("log10 of largest norm", f"{math.log10(max(summary.max_norm, 1e-300)):.3g}")

    frame = records_frame(records)
    panels = st.columns(3)
    for panel, (x, y) in zip(panels, (("b12", "b23"), ("b23", "b13"), ("b12", "b13"))):
        with panel:
            st.markdown(f"**{x} / {y}**")
            st.scatter_chart(frame, x=x, y=y)

    json_buffer = io.StringIO()
    export_json(records, json_buffer, seed=seed, sequence=sequence)
    col1, col2, col3 = st.columns(3)
    col1.download_button(
        "Download CSV",
        data=frame.to_csv(index=False, float_format="%.17g", lineterminator="\n"),
        file_name="orbit.csv",
        mime="text/csv",
    )
    col2.download_button("Download JSON", data=json_buffer.getvalue(), file_name="orbit.json", mime="application/json")
    col3.download_button("Download SVG", data=orbit_svg(records), file_name="orbit.svg", mime="image/svg+xml")

with tab_b:
    st.code(
        """
        import streamlit as st
        from qmut.orbit import random_alternating_sequence, records_frame, run_orbit
        from qmut.quiver_core import parse_triple

        triple = parse_triple("-0.6,-0.43,0.567")
        sequence = random_alternating_sequence(1000, seed=7)

        frame = records_frame(run_orbit(triple, sequence))
        st.scatter_chart(frame, x="b12", y="b23")
        """
    )

with tab_c:
    col1, col2 = st.columns(2)

    with col1:
        st.markdown("""
                    **Configuration**
                    * `QMUT_SEED` - default seed
                    * Sequences are reproducible across runs for a fixed seed
                    """)
    with col2:
        st.markdown("""
                    **Dependencies**
                    * [Streamlit](https://pypi.org/project/streamlit/) - `streamlit`
                    * [pandas](https://pypi.org/project/pandas/) - `pandas`
                    """)
