package org.acme.billing;

public interface RateTable {
    int feeFor(String account);

    String currency();
}
