import streamlit as st

from qmut.classifier import classify, is_markov_quiver
from qmut.errors import QuiverError
from qmut.quiver_core import canonicalize, parse_triple

st.header(body="Quivers", divider=True)
st.subheader("Classify a mutation class")
st.write(
    "Decide whether the mutation class of a rank 3 quiver is bounded. "
    "The class is bounded exactly when the largest weight p is at most 2 and the Markov constant C(Q) is at most 4."
)

tab_a, tab_b, tab_c = st.tabs(["**Try it**", "**Code snippet**", "**Requirements**"])

with tab_a:
    quiver_text = st.text_input(
        "Quiver as b12,b23,b13:",
        value="-0.6,-0.43,0.567",
        help="A positive b12 is an arrow 1 -> 2, a negative one an arrow 2 -> 1.",
        key="quiver",
    )

    try:
        triple = parse_triple(quiver_text)
        verdict = classify(triple)
    except QuiverError as e:
        st.error(f"Invalid quiver: {e}")
    else:
        form = canonicalize(triple)
        col1, col2, col3 = st.columns(3)
        col1.metric("Largest weight p", f"{verdict.max_weight:.6g}")
        col2.metric("Markov constant C(Q)", f"{verdict.markov_c:.6g}")
        col3.metric("Orientation", form.orientation.value)

        if verdict.bounded:
            bound = "" if verdict.norm_bound is None else f" Every quiver in it has norm at most {verdict.norm_bound:.6g}."
            st.success(f"Bounded ({verdict.reason.value}).{bound}")
        else:
            st.warning(f"Unbounded ({verdict.reason.value}).")
        if is_markov_quiver(triple):
            st.info("This is the Markov quiver: mutation only permutes its weights.")
        if verdict.near_boundary:
            st.info("The quiver lies within rounding distance of the boundary of the criterion.")
        st.json(verdict.to_dict())

with tab_b:
    st.code(
        """
        import streamlit as st
        from qmut.classifier import classify
        from qmut.quiver_core import parse_triple

        quiver_text = st.text_input("Quiver as b12,b23,b13:", value="2,2,-2")

        verdict = classify(parse_triple(quiver_text))
        st.write("Bounded" if verdict.bounded else "Unbounded", verdict.reason.value)
        st.json(verdict.to_dict())
        """
    )

with tab_c:
    col1, col2 = st.columns(2)

    with col1:
        st.markdown("""
                    **Input format**
                    * Signed exchange triple `b12,b23,b13`
                    * Finite real weights
                    """)
    with col2:
        st.markdown("""
                    **Dependencies**
                    * [Streamlit](https://pypi.org/project/streamlit/) - `streamlit`
                    * [NumPy](https://pypi.org/project/numpy/) - `numpy`
                    """)
