// v-discriminants
