//! Every example under examples/ runs to completion.

macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!("../examples/", $file));

            #[test]
            fn runs() {
                run_example().unwrap();
            }
        }
    };
}

example!(parse_and_classify, "parse_and_classify.rs");
example!(fraction_equality, "fraction_equality.rs");
example!(hom_extension, "hom_extension.rs");
example!(derived_preorder, "derived_preorder.rs");
example!(power_universal, "power_universal.rs");
example!(comparison_conditions, "comparison_conditions.rs");
example!(commutative_oracle, "commutative_oracle.rs");
example!(formal_differences, "formal_differences.rs");
example!(cli_reports, "cli_reports.rs");
