//! Built-in vocabulary.
//!
//! Published ontology terms keep their OBO / W3C IRIs. Properties and classes
//! that have no published identifier live under [`SU`].

use crate::term::Iri;

pub const SU: &str = "https://w3id.org/semanticunits/vocab#";
pub const OBO: &str = "http://purl.obolibrary.org/obo/";
pub const NP: &str = "http://www.nanopub.org/nschema#";

macro_rules! terms {
    ($($(#[$doc:meta])* $konst:ident => $func:ident : $iri:expr;)*) => {
        $(
            $(#[$doc])*
            pub const $konst: &str = $iri;
            $(#[$doc])*
            pub fn $func() -> Iri {
                Iri::from_static($konst)
            }
        )*
    };
}

terms! {
    RDF_TYPE => rdf_type: "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    RDFS_LABEL => rdfs_label: "http://www.w3.org/2000/01/rdf-schema#label";
    RDFS_SUBCLASS_OF => rdfs_subclass_of: "http://www.w3.org/2000/01/rdf-schema#subClassOf";
    OWL_CLASS => owl_class: "http://www.w3.org/2002/07/owl#Class";
    OWL_NAMED_INDIVIDUAL => owl_named_individual: "http://www.w3.org/2002/07/owl#NamedIndividual";
    XSD_STRING => xsd_string: "http://www.w3.org/2001/XMLSchema#string";
    XSD_INTEGER => xsd_integer: "http://www.w3.org/2001/XMLSchema#integer";
    XSD_DECIMAL => xsd_decimal: "http://www.w3.org/2001/XMLSchema#decimal";
    XSD_DOUBLE => xsd_double: "http://www.w3.org/2001/XMLSchema#double";
    XSD_DATETIME => xsd_datetime: "http://www.w3.org/2001/XMLSchema#dateTime";

    // Relation ontology and friends.
    /// 'correlated with'
    RO_CORRELATED_WITH => ro_correlated_with: "http://purl.obolibrary.org/obo/RO_0002610";
    /// 'negatively correlated with'
    RO_NEGATIVELY_CORRELATED_WITH => ro_negatively_correlated_with: "http://purl.obolibrary.org/obo/RO_0017004";
    /// 'positively correlated with'
    RO_POSITIVELY_CORRELATED_WITH => ro_positively_correlated_with: "http://purl.obolibrary.org/obo/RO_0017003";
    /// 'negatively regulates characteristic'
    RO_NEGATIVELY_REGULATES_CHARACTERISTIC => ro_negatively_regulates_characteristic: "http://purl.obolibrary.org/obo/RO_0019002";
    /// 'positively regulates characteristic'
    RO_POSITIVELY_REGULATES_CHARACTERISTIC => ro_positively_regulates_characteristic: "http://purl.obolibrary.org/obo/RO_0019001";
    /// 'causally upstream of or within, negative effect'
    RO_CAUSALLY_UPSTREAM_NEGATIVE => ro_causally_upstream_negative: "http://purl.obolibrary.org/obo/RO_0004046";
    /// 'causally upstream of or within, positive effect'
    RO_CAUSALLY_UPSTREAM_POSITIVE => ro_causally_upstream_positive: "http://purl.obolibrary.org/obo/RO_0004047";
    /// 'causally influences'
    RO_CAUSALLY_INFLUENCES => ro_causally_influences: "http://purl.obolibrary.org/obo/RO_0002566";
    /// 'overlaps'
    RO_OVERLAPS => ro_overlaps: "http://purl.obolibrary.org/obo/RO_0002131";
    /// 'has disposition'
    RO_HAS_DISPOSITION => ro_has_disposition: "http://purl.obolibrary.org/obo/RO_0000091";
    /// 'participates in'
    RO_PARTICIPATES_IN => ro_participates_in: "http://purl.obolibrary.org/obo/RO_0000056";
    /// 'has quality'
    RO_HAS_QUALITY => ro_has_quality: "http://purl.obolibrary.org/obo/RO_0000086";
    /// 'has part'
    BFO_HAS_PART => bfo_has_part: "http://purl.obolibrary.org/obo/BFO_0000051";
    /// 'is about'; used as the representation-referent link.
    IAO_IS_ABOUT => iao_is_about: "http://purl.obolibrary.org/obo/IAO_0000136";
    /// 'has measurement unit label'
    IAO_HAS_MEASUREMENT_UNIT_LABEL => iao_has_measurement_unit_label: "http://purl.obolibrary.org/obo/IAO_0000039";
    /// 'has value specification'
    OBI_HAS_VALUE_SPECIFICATION => obi_has_value_specification: "http://purl.obolibrary.org/obo/OBI_0001938";
    /// 'has specified numeric value'
    OBI_HAS_SPECIFIED_NUMERIC_VALUE => obi_has_specified_numeric_value: "http://purl.obolibrary.org/obo/OBI_0001937";

    // Properties named without a published identifier.
    /// 'causally influences, positive effect'
    SU_CAUSALLY_INFLUENCES_POSITIVE => su_causally_influences_positive: "https://w3id.org/semanticunits/vocab#causallyInfluencesPositiveEffect";
    SU_SATISFIES => su_satisfies: "https://w3id.org/semanticunits/vocab#satisfies";
    SU_CONTRADICTS => su_contradicts: "https://w3id.org/semanticunits/vocab#contradicts";
    SU_CLASS_AXIOM_OF => su_class_axiom_of: "https://w3id.org/semanticunits/vocab#classAxiomOf";
    SU_CAUSAL_INTERPRETATION_OF => su_causal_interpretation_of: "https://w3id.org/semanticunits/vocab#causalInterpretationOf";
    SU_HAS_ASSOCIATED_MEASUREMENT => su_has_associated_measurement: "https://w3id.org/semanticunits/vocab#hasAssociatedMeasurement";
    /// 'measured/estimated applying method'
    SU_MEASURED_APPLYING_METHOD => su_measured_applying_method: "https://w3id.org/semanticunits/vocab#measuredOrEstimatedApplyingMethod";
    SU_DERIVED_BY_DO_CALCULUS_FROM => su_derived_by_do_calculus_from: "https://w3id.org/semanticunits/vocab#derivedByDoCalculusFrom";
    SU_HAS_ASSOCIATED_UNIT => su_has_associated_unit: "https://w3id.org/semanticunits/vocab#hasAssociatedUnit";
    SU_MEMBER_INDEX => su_member_index: "https://w3id.org/semanticunits/vocab#memberIndex";
    SU_DERIVED_BY => su_derived_by: "https://w3id.org/semanticunits/vocab#derivedBy";
    SU_DERIVED_FROM => su_derived_from: "https://w3id.org/semanticunits/vocab#derivedFrom";
    SU_LOGICAL_FRAMEWORK => su_logical_framework: "https://w3id.org/semanticunits/vocab#logicalFramework";
    SU_CONFORMS_TO_SHAPE => su_conforms_to_shape: "https://w3id.org/semanticunits/vocab#conformsToShape";
    SU_ALTERNATIVE_TO => su_alternative_to: "https://w3id.org/semanticunits/vocab#alternativeTo";
    SU_ASSUMPTION => su_assumption: "https://w3id.org/semanticunits/vocab#assumption";
    SU_JUNCTION_FIRST => su_junction_first: "https://w3id.org/semanticunits/vocab#junctionFirstVariable";
    SU_JUNCTION_MIDDLE => su_junction_middle: "https://w3id.org/semanticunits/vocab#junctionMiddleVariable";
    SU_JUNCTION_LAST => su_junction_last: "https://w3id.org/semanticunits/vocab#junctionLastVariable";
    SU_FOCUS_CAUSE => su_focus_cause: "https://w3id.org/semanticunits/vocab#focusCause";
    SU_FOCUS_EFFECT => su_focus_effect: "https://w3id.org/semanticunits/vocab#focusEffect";
    SU_CAUSAL_PATH => su_causal_path: "https://w3id.org/semanticunits/vocab#causalPath";
    SU_BIASING_PATH => su_biasing_path: "https://w3id.org/semanticunits/vocab#biasingPath";
    SU_ADJUSTMENT_SET => su_adjustment_set: "https://w3id.org/semanticunits/vocab#adjustmentSet";
    SU_MEDIATOR_SET => su_mediator_set: "https://w3id.org/semanticunits/vocab#mediatorSet";
    SU_INSTRUMENT => su_instrument: "https://w3id.org/semanticunits/vocab#instrument";
    SU_ESTIMAND => su_estimand: "https://w3id.org/semanticunits/vocab#estimand";
    SU_CONTEXT_FILTER => su_context_filter: "https://w3id.org/semanticunits/vocab#contextFilter";
    SU_INTERVENTION => su_intervention: "https://w3id.org/semanticunits/vocab#intervention";
    SU_DERIVED_APPLYING_METHOD => su_derived_applying_method: "https://w3id.org/semanticunits/vocab#derivedApplyingMethod";
    SU_UNCERTAINTY => su_uncertainty: "https://w3id.org/semanticunits/vocab#uncertainty";
    SU_COUNTERFACTUAL_OF => su_counterfactual_of: "https://w3id.org/semanticunits/vocab#counterfactualOf";
    SU_PREDICTED_VALUE => su_predicted_value: "https://w3id.org/semanticunits/vocab#predictedValue";
    SU_PREDICTED_PROBABILITY => su_predicted_probability: "https://w3id.org/semanticunits/vocab#predictedProbability";
    SU_PREDICTED_DISTRIBUTION => su_predicted_distribution: "https://w3id.org/semanticunits/vocab#predictedDistribution";
    SU_SERIALIZES => su_serializes: "https://w3id.org/semanticunits/vocab#serializes";
    SU_HAS_MEMBER_NANOPUB => su_has_member_nanopub: "https://w3id.org/semanticunits/vocab#hasMemberNanopublication";
    SU_EXPORTER_VERSION => su_exporter_version: "https://w3id.org/semanticunits/vocab#exporterVersion";

    // Rules of the entailment cascade.
    SU_RULE_ASSERTIONAL_TO_CONTINGENT => su_rule_assertional_to_contingent: "https://w3id.org/semanticunits/vocab#ruleAssertionalEntailsContingent";
    SU_RULE_PROTOTYPICAL_TO_CONTINGENT => su_rule_prototypical_to_contingent: "https://w3id.org/semanticunits/vocab#rulePrototypicalEntailsContingent";
    SU_RULE_UNIVERSAL_TO_WEAKER => su_rule_universal_to_weaker: "https://w3id.org/semanticunits/vocab#ruleUniversalEntailsWeaker";

    SU_DESCRIPTION_LOGICS => su_description_logics: "https://w3id.org/semanticunits/vocab#DescriptionLogics";
    SU_FIRST_ORDER_LOGIC => su_first_order_logic: "https://w3id.org/semanticunits/vocab#FirstOrderLogic";

    // Quantifier resource classes.
    SU_SOME_INSTANCE_RESOURCE => su_some_instance_resource: "https://w3id.org/semanticunits/vocab#SomeInstanceResource";
    SU_EVERY_INSTANCE_RESOURCE => su_every_instance_resource: "https://w3id.org/semanticunits/vocab#EveryInstanceResource";
    SU_MOST_INSTANCES_RESOURCE => su_most_instances_resource: "https://w3id.org/semanticunits/vocab#MostInstancesResource";

    // Unit classes.
    SU_SEMANTIC_UNIT => su_semantic_unit: "https://w3id.org/semanticunits/vocab#SemanticUnit";
    SU_STATEMENT_UNIT => su_statement_unit: "https://w3id.org/semanticunits/vocab#StatementUnit";
    SU_COMPOUND_UNIT => su_compound_unit: "https://w3id.org/semanticunits/vocab#CompoundUnit";
    SU_ASSERTIONAL_STATEMENT_UNIT => su_assertional_statement_unit: "https://w3id.org/semanticunits/vocab#AssertionalStatementUnit";
    SU_CONTINGENT_STATEMENT_UNIT => su_contingent_statement_unit: "https://w3id.org/semanticunits/vocab#ContingentStatementUnit";
    SU_PROTOTYPICAL_STATEMENT_UNIT => su_prototypical_statement_unit: "https://w3id.org/semanticunits/vocab#PrototypicalStatementUnit";
    SU_UNIVERSAL_STATEMENT_UNIT => su_universal_statement_unit: "https://w3id.org/semanticunits/vocab#UniversalStatementUnit";
    SU_MEASUREMENT_STATEMENT_UNIT => su_measurement_statement_unit: "https://w3id.org/semanticunits/vocab#MeasurementStatementUnit";
    SU_CLASS_AXIOM_UNIT => su_class_axiom_unit: "https://w3id.org/semanticunits/vocab#ClassAxiomUnit";
    SU_CORRELATION_STATEMENT_UNIT => su_correlation_statement_unit: "https://w3id.org/semanticunits/vocab#CorrelationStatementUnit";
    SU_CAUSAL_STATEMENT_UNIT => su_causal_statement_unit: "https://w3id.org/semanticunits/vocab#CausalStatementUnit";
    SU_NECESSARY_CAUSAL_STATEMENT_UNIT => su_necessary_causal_statement_unit: "https://w3id.org/semanticunits/vocab#NecessaryUniversalCausalStatementUnit";
    SU_SUFFICIENT_CAUSAL_STATEMENT_UNIT => su_sufficient_causal_statement_unit: "https://w3id.org/semanticunits/vocab#SufficientUniversalCausalStatementUnit";
    SU_NECESSARY_AND_SUFFICIENT_CAUSAL_STATEMENT_UNIT => su_necessary_and_sufficient_causal_statement_unit: "https://w3id.org/semanticunits/vocab#NecessaryAndSufficientUniversalCausalStatementUnit";
    SU_COUNTERFACTUAL_STATEMENT_UNIT => su_counterfactual_statement_unit: "https://w3id.org/semanticunits/vocab#CounterfactualStatementUnit";
    SU_MATERIAL_ENTITY_ITEM_UNIT => su_material_entity_item_unit: "https://w3id.org/semanticunits/vocab#MaterialEntityItemUnit";
    SU_ORGANISM_DESCRIPTION_COMPOUND_UNIT => su_organism_description_compound_unit: "https://w3id.org/semanticunits/vocab#OrganismDescriptionCompoundUnit";
    SU_CAUSAL_VARIABLE_COMPOUND_UNIT => su_causal_variable_compound_unit: "https://w3id.org/semanticunits/vocab#CausalVariableCompoundUnit";
    SU_CAUSAL_NETWORK_COMPOUND_UNIT => su_causal_network_compound_unit: "https://w3id.org/semanticunits/vocab#CausalNetworkCompoundUnit";
    SU_CORRELATION_NETWORK_COMPOUND_UNIT => su_correlation_network_compound_unit: "https://w3id.org/semanticunits/vocab#CorrelationNetworkCompoundUnit";
    SU_CHAIN_JUNCTION_UNIT => su_chain_junction_unit: "https://w3id.org/semanticunits/vocab#ChainJunctionUnit";
    SU_FORK_JUNCTION_UNIT => su_fork_junction_unit: "https://w3id.org/semanticunits/vocab#ForkJunctionUnit";
    SU_COLLIDER_JUNCTION_UNIT => su_collider_junction_unit: "https://w3id.org/semanticunits/vocab#ColliderJunctionUnit";
    SU_CAUSAL_PERSPECTIVE_UNIT => su_causal_perspective_unit: "https://w3id.org/semanticunits/vocab#CausalPerspectiveUnit";
    SU_CONTEXTUAL_CAUSAL_PERSPECTIVE_UNIT => su_contextual_causal_perspective_unit: "https://w3id.org/semanticunits/vocab#ContextualCausalPerspectiveUnit";
    SU_BACK_DOOR_CAUSAL_PERSPECTIVE_UNIT => su_back_door_causal_perspective_unit: "https://w3id.org/semanticunits/vocab#BackDoorCausalPerspectiveUnit";
    SU_FRONT_DOOR_CAUSAL_PERSPECTIVE_UNIT => su_front_door_causal_perspective_unit: "https://w3id.org/semanticunits/vocab#FrontDoorCausalPerspectiveUnit";
    SU_INSTRUMENTAL_VARIABLE_CAUSAL_PERSPECTIVE_UNIT => su_instrumental_variable_causal_perspective_unit: "https://w3id.org/semanticunits/vocab#InstrumentalVariableCausalPerspectiveUnit";
    SU_POTENTIAL_OUTCOME_COMPOUND_UNIT => su_potential_outcome_compound_unit: "https://w3id.org/semanticunits/vocab#PotentialOutcomeCompoundUnit";

    // Nanopublication schema.
    NP_NANOPUBLICATION => np_nanopublication: "http://www.nanopub.org/nschema#Nanopublication";
    NP_HAS_ASSERTION => np_has_assertion: "http://www.nanopub.org/nschema#hasAssertion";
    NP_HAS_PROVENANCE => np_has_provenance: "http://www.nanopub.org/nschema#hasProvenance";
    NP_HAS_PUBLICATION_INFO => np_has_publication_info: "http://www.nanopub.org/nschema#hasPublicationInfo";
    PROV_WAS_GENERATED_BY => prov_was_generated_by: "http://www.w3.org/ns/prov#wasGeneratedBy";
    DCT_CREATED => dct_created: "http://purl.org/dc/terms/created";
    DCT_LICENSE => dct_license: "http://purl.org/dc/terms/license";
    SU_EXPORT_ACTIVITY => su_export_activity: "https://w3id.org/semanticunits/vocab#nanopublicationExport";
}

/// Unit classes known without any declaration in the store.
pub const BUILTIN_UNIT_CLASSES: &[&str] = &[
    SU_SEMANTIC_UNIT,
    SU_STATEMENT_UNIT,
    SU_COMPOUND_UNIT,
    SU_ASSERTIONAL_STATEMENT_UNIT,
    SU_CONTINGENT_STATEMENT_UNIT,
    SU_PROTOTYPICAL_STATEMENT_UNIT,
    SU_UNIVERSAL_STATEMENT_UNIT,
    SU_MEASUREMENT_STATEMENT_UNIT,
    SU_CLASS_AXIOM_UNIT,
    SU_CORRELATION_STATEMENT_UNIT,
    SU_CAUSAL_STATEMENT_UNIT,
    SU_NECESSARY_CAUSAL_STATEMENT_UNIT,
    SU_SUFFICIENT_CAUSAL_STATEMENT_UNIT,
    SU_NECESSARY_AND_SUFFICIENT_CAUSAL_STATEMENT_UNIT,
    SU_COUNTERFACTUAL_STATEMENT_UNIT,
    SU_MATERIAL_ENTITY_ITEM_UNIT,
    SU_ORGANISM_DESCRIPTION_COMPOUND_UNIT,
    SU_CAUSAL_VARIABLE_COMPOUND_UNIT,
    SU_CAUSAL_NETWORK_COMPOUND_UNIT,
    SU_CORRELATION_NETWORK_COMPOUND_UNIT,
    SU_CHAIN_JUNCTION_UNIT,
    SU_FORK_JUNCTION_UNIT,
    SU_COLLIDER_JUNCTION_UNIT,
    SU_CAUSAL_PERSPECTIVE_UNIT,
    SU_CONTEXTUAL_CAUSAL_PERSPECTIVE_UNIT,
    SU_BACK_DOOR_CAUSAL_PERSPECTIVE_UNIT,
    SU_FRONT_DOOR_CAUSAL_PERSPECTIVE_UNIT,
    SU_INSTRUMENTAL_VARIABLE_CAUSAL_PERSPECTIVE_UNIT,
    SU_POTENTIAL_OUTCOME_COMPOUND_UNIT,
];

/// Graph holding unit-class declarations and vocabulary labels.
pub const VOCABULARY_GRAPH: &str = "urn:su:graph:vocabulary";

pub fn vocabulary_graph() -> Iri {
    Iri::from_static(VOCABULARY_GRAPH)
}
