package org.acme.library;

public interface Member {
    String getName();

    int getLoans();

    boolean isSuspended();
}
