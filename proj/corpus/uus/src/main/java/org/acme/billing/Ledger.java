package org.acme.billing;

public interface Ledger {
    int balanceOf(String account);

    String ownerOf(String account);

    boolean isFrozen(String account);
}
