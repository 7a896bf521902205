import streamlit as st

from qmut.errors import QuiverError
from qmut.orbit import orbit_summary, records_frame, run_orbit
from qmut.quiver_core import parse_sequence, parse_triple

st.header(body="Quivers", divider=True)
st.subheader("Mutate a quiver")
st.write(
    "Apply a mutation sequence to a rank 3 quiver and inspect every intermediate quiver. "
    "The first vertex of the sequence is mutated first."
)

tab_a, tab_b, tab_c = st.tabs(["**Try it**", "**Code snippet**", "**Requirements**"])

with tab_a:
    quiver_text = st.text_input("Quiver as b12,b23,b13:", value="1,1,0", key="quiver")
    sequence_text = st.text_input("Mutation sequence:", value="2,1,3", help="Vertices 1, 2 or 3.", key="sequence")

    try:
        records = list(run_orbit(parse_triple(quiver_text), parse_sequence(sequence_text)))
    except QuiverError as e:
        st.error(f"Could not mutate: {e}")
    else:
        frame = records_frame(records)
        summary = orbit_summary(records)
        col1, col2 = st.columns(2)
        col1.metric("Largest norm", f"{summary.max_norm:.6g}", help=f"Reached at step {summary.argmax_step}")
        col2.metric("Markov constant drift", f"{summary.markov_drift:.2e}")
        st.dataframe(frame, use_container_width=True, hide_index=True)
        st.download_button(
            "Download CSV",
            data=frame.to_csv(index=False, float_format="%.17g", lineterminator="\n"),
            file_name="trajectory.csv",
            mime="text/csv",
        )

with tab_b:
    st.code(
        """
        import streamlit as st
        from qmut.orbit import records_frame, run_orbit
        from qmut.quiver_core import parse_sequence, parse_triple

        triple = parse_triple(st.text_input("Quiver:", value="1,1,0"))
        sequence = parse_sequence(st.text_input("Mutation sequence:", value="2,1,3"))

        st.dataframe(records_frame(run_orbit(triple, sequence)))
        """
    )

with tab_c:
    col1, col2 = st.columns(2)

    with col1:
        st.markdown("""
                    **Input format**
                    * Quiver `b12,b23,b13`
                    * Sequence of vertices, e.g. `2,1,3`
                    """)
    with col2:
        st.markdown("""
                    **Dependencies**
                    * [Streamlit](https://pypi.org/project/streamlit/) - `streamlit`
                    * [pandas](https://pypi.org/project/pandas/) - `pandas`
                    """)
